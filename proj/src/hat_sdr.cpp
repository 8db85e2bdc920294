#include "hopfcyclic/hat_sdr.hpp"

#include <functional>

namespace hopfcyclic {

namespace {

MixedComplexData without_connes(const MixedComplexData& m, int top) {
    MixedComplexData out;
    for (int n = 0; n <= top; ++n) {
        out.dims.push_back(m.dims[n]);
        out.b.push_back(m.b[n]);
    }
    for (int n = 0; n < top; ++n) out.B.emplace_back(m.dims[n + 1], m.dims[n]);
    return out;
}

MixedComplexData hat_hochschild(Resolution& res) {
    MixedComplexData m;
    for (int n = 0; n <= res.top(); ++n) {
        m.dims.push_back(res.xhat_offsets(n).back());
        m.b.push_back(res.dhat_matrix(n));
    }
    for (int n = 0; n < res.top(); ++n) m.B.emplace_back(m.dims[n + 1], m.dims[n]);
    return m;
}

struct Block {
    int power;
    int xdeg;
    Matrix m;
};

// Assembles a map between total degrees from column blocks.
Matrix assemble(const std::vector<Column>& src, const std::vector<Column>& dst, std::size_t rows, std::size_t cols,
                const std::function<std::vector<Block>(const Column&)>& blocks) {
    Matrix out(rows, cols);
    for (const auto& c : src)
        for (const auto& b : blocks(c))
            for (const auto& t : dst)
                if (t.power == b.power && t.xdeg == b.xdeg) out = out + block_embed(b.m, rows, cols, t.offset, c.offset);
    return out;
}

}  // namespace

SDRData hat_unperturbed_sdr(Resolution& res) {
    const int T = res.top();
    TotalComplex yt = totalize(hat_hochschild(res), Variant::BC, T);
    TotalComplex xt = totalize(without_connes(res.canonical().mixed, T), Variant::BC, T);
    SDRData s;
    s.Y = yt.complex;
    s.X = xt.complex;
    for (int n = 0; n <= T; ++n) {
        s.i.push_back(assemble(yt.cols(n), xt.cols(n), xt.complex.dim(n), yt.complex.dim(n),
                               [&](const Column& c) { return std::vector<Block>{{c.power, c.xdeg, res.phihat_matrix(c.xdeg)}}; }));
        s.p.push_back(assemble(xt.cols(n), yt.cols(n), yt.complex.dim(n), xt.complex.dim(n),
                               [&](const Column& c) { return std::vector<Block>{{c.power, c.xdeg, res.psihat_matrix(c.xdeg)}}; }));
        if (n < T)
            s.h.push_back(assemble(xt.cols(n), xt.cols(n + 1), xt.complex.dim(n + 1), xt.complex.dim(n),
                                   [&](const Column& c) {
                                       return std::vector<Block>{{c.power, c.xdeg + 1, res.omegahat_matrix(c.xdeg)}};
                                   }));
    }
    return s;
}

std::vector<Matrix> connes_perturbation(Resolution& res) {
    const int T = res.top();
    const MixedComplexData& m = res.canonical().mixed;
    ChainComplex full = totalize(m, Variant::BC, T).complex;
    ChainComplex plain = totalize(without_connes(m, T), Variant::BC, T).complex;
    std::vector<Matrix> delta;
    for (int n = 0; n <= T; ++n) delta.push_back(full.diff(n) - plain.diff(n));
    return delta;
}

SDRData hat_closed_sdr(Resolution& res) {
    const int T = res.top() - 1;
    const MixedComplexData& can = res.canonical().mixed;
    TotalComplex yt = totalize(res.hat_mixed(), Variant::BC, T);
    TotalComplex xt = totalize(can, Variant::BC, T);
    // (B omega)^j on C_m, landing in C_{m+2j}
    auto b_omega_power = [&](int m, int j) {
        Matrix acc = Matrix::identity(can.dims[m]);
        for (int k = 0; k < j; ++k) acc = compose(can.B[m + 2 * k + 1], compose(res.omegahat_matrix(m + 2 * k), acc));
        return acc;
    };
    SDRData s;
    s.Y = yt.complex;
    s.X = xt.complex;
    for (int n = 0; n <= T; ++n) {
        s.i.push_back(assemble(yt.cols(n), xt.cols(n), xt.complex.dim(n), yt.complex.dim(n), [&](const Column& c) {
            std::vector<Block> b{{c.power, c.xdeg, res.phihat_matrix(c.xdeg)}};
            if (c.power >= 1)
                b.push_back({c.power - 1, c.xdeg + 2,
                             compose(res.omegahat_matrix(c.xdeg + 1), compose(can.B[c.xdeg], res.phihat_matrix(c.xdeg)))});
            return b;
        }));
        s.p.push_back(assemble(xt.cols(n), yt.cols(n), yt.complex.dim(n), xt.complex.dim(n), [&](const Column& c) {
            std::vector<Block> b;
            for (int j = 0; j <= c.power; ++j)
                b.push_back({c.power - j, c.xdeg + 2 * j, compose(res.psihat_matrix(c.xdeg + 2 * j), b_omega_power(c.xdeg, j))});
            return b;
        }));
        if (n < T)
            s.h.push_back(assemble(xt.cols(n), xt.cols(n + 1), xt.complex.dim(n + 1), xt.complex.dim(n), [&](const Column& c) {
                std::vector<Block> b;
                for (int j = 0; j <= c.power; ++j)
                    b.push_back({c.power - j, c.xdeg + 2 * j + 1,
                                 compose(res.omegahat_matrix(c.xdeg + 2 * j), b_omega_power(c.xdeg, j))});
                return b;
            }));
    }
    return s;
}

Matrix connes_omega_connes_phi(Resolution& res, const CanonicalComplex& ext, int n) {
    return compose(ext.mixed.B[n + 2],
                   compose(res.omegahat_matrix(n + 1), compose(ext.mixed.B[n], res.phihat_matrix(n))));
}

bool HatSdrReport::ok() const {
    for (bool z : connes_zero)
        if (!z) return false;
    return zero_delta_identity && mismatches.empty() && engine.ok() && closed.ok() && psi_phi_identity;
}

HatSdrReport perturbed_hat_sdr(Resolution& res, int connes_through) {
    HatSdrReport rep;
    const CrossedData& c = res.crossed();
    int ext_top = std::max(res.top(), connes_through + 3);
    CanonicalComplex ext = canonical_mixed(c.E, res.k_in_E(), ext_top);
    for (int n = 0; n <= connes_through && n + 2 <= res.top(); ++n) {
        rep.connes_degrees.push_back(n);
        rep.connes_zero.push_back(connes_omega_connes_phi(res, ext, n).is_zero());
    }

    SDRData base = hat_unperturbed_sdr(res);
    std::vector<Matrix> delta = connes_perturbation(res);
    const int T = base.top() - 1;
    rep.top = T;

    std::vector<Matrix> zeros;
    for (int n = 0; n <= base.top(); ++n) zeros.emplace_back(base.X.dim(n - 1), base.X.dim(n));
    {
        SDRData z = perturb(base, zeros).sdr;
        bool same = true;
        for (int n = 0; n <= T; ++n) {
            same = same && z.Y.diff(n) == base.Y.diff(n) && z.X.diff(n) == base.X.diff(n);
            same = same && z.i[n] == base.i[n] && z.p[n] == base.p[n];
            if (n < T) same = same && z.h[n] == base.h[n];
        }
        rep.zero_delta_identity = same;
    }

    PerturbResult pr = perturb(base, delta);
    rep.nilpotency = pr.nilpotency;
    rep.engine = verify_sdr(pr.sdr);
    SDRData closed = hat_closed_sdr(res);
    rep.closed = verify_sdr(closed);
    for (int n = 0; n <= T; ++n) {
        auto note = [&](bool eq, const char* what) {
            if (!eq) rep.mismatches.push_back(std::string(what) + " in degree " + std::to_string(n));
        };
        note(pr.sdr.Y.diff(n) == closed.Y.diff(n), "perturbed hat differential vs dhat + Dhat");
        note(pr.sdr.X.diff(n) == closed.X.diff(n), "perturbed canonical differential vs b + B");
        note(pr.sdr.i[n] == closed.i[n], "Phi");
        note(pr.sdr.p[n] == closed.p[n], "Psi");
        if (n < T) note(pr.sdr.h[n] == closed.h[n], "Omega");
    }
    bool id = true;
    for (int n = 0; n <= T; ++n) id = id && compose(closed.p[n], closed.i[n]) == Matrix::identity(closed.Y.dim(n));
    rep.psi_phi_identity = id;
    return rep;
}

}  // namespace hopfcyclic
