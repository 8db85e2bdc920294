#pragma once

#include <string>
#include <vector>

#include "hopfcyclic/resolution.hpp"

namespace hopfcyclic {

// Tot BC(hat X, dhat, 0) <-> Tot BC(E (x) Ebar^*, b, 0) with columnwise
// phihat, psihat, omegahat, through degree res.top().
SDRData hat_unperturbed_sdr(Resolution& res);
// The perturbation of Tot BC(E (x) Ebar^*, b, 0) induced by the Connes operator.
std::vector<Matrix> connes_perturbation(Resolution& res);
// Tot BC(hat X, dhat, Dhat) <-> Tot BC(E (x) Ebar^*, b, B) with
//   Phi(x u^i)   = phi(x) u^i + omega B phi(x) u^{i-1}
//   Psi(x u^i)   = sum_j psi (B omega)^j (x) u^{i-j}
//   Omega(x u^i) = sum_j omega (B omega)^j (x) u^{i-j}
// through degree res.top() - 1.
SDRData hat_closed_sdr(Resolution& res);

// B omegahat B phihat on hat X_n, into C_{n+3}. `ext` is the canonical
// complex of E relative to K built through degree at least n + 3.
Matrix connes_omega_connes_phi(Resolution& res, const CanonicalComplex& ext, int n);

struct HatSdrReport {
    int top = 0;                      // degree bound of the perturbed data
    std::vector<int> connes_degrees;   // source degrees checked for B omega B phi = 0
    std::vector<bool> connes_zero;
    bool zero_delta_identity = false;
    std::vector<std::string> mismatches;  // engine vs closed formulas
    SDRReport engine;                 // verify_sdr on the perturbed datum
    SDRReport closed;
    bool psi_phi_identity = false;
    std::vector<int> nilpotency;

    bool ok() const;
};
// Runs the perturbation engine on hat_unperturbed_sdr and compares with
// hat_closed_sdr; checks B omega B phi = 0 for source degrees 0..connes_through.
HatSdrReport perturbed_hat_sdr(Resolution& res, int connes_through);

}  // namespace hopfcyclic
