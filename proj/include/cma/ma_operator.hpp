#pragma once

#include "cma/kahler_background.hpp"

namespace cma {

/// A Kahler potential with its cached mixed Hessian and deformed metric
/// g + phi_{i jbar}. Built once, never mutated.
struct PotentialState {
  ScalarField phi;
  HermitianField hess;    // phi_{i jbar}
  HermitianField metric;  // g_{i jbar} + phi_{i jbar}
  ScalarField det;        // det(g + phi_{i jbar})
  double min_eig = 0.0;   // grid min of the smallest eigenvalue of the metric

  static PotentialState evaluate(const ScalarField& phi, const KahlerBackground& bg);
  bool positive() const { return min_eig > 0.0; }
};

/// log det(g + phi_{i jbar}) - log det g - F + lambda phi. Throws NotPositive
/// when the deformed metric is not positive definite somewhere.
ScalarField residual(const PotentialState& state, const ScalarField& F,
                     const KahlerBackground& bg, double lambda);

/// (Delta_phi + lambda) psi with Delta_phi psi = g_phi^{i jbar} psi_{i jbar}.
ScalarField linearized_apply(const PotentialState& state, const ScalarField& psi,
                             const KahlerBackground& bg, double lambda);

/// F + log(Vol / integral e^F dvol_g).
ScalarField normalize_F(const ScalarField& F, const KahlerBackground& bg);

/// phi - (integral phi dvol_g) / Vol.
ScalarField project_zero_mean(const ScalarField& phi, const KahlerBackground& bg);

struct VolumeForm {
  ScalarField weight;   // e^F det g, i.e. dvol_phi per unit coordinate volume
  double consistency;   // max |det(g+phi)/det g - e^{residual + F}|
};
VolumeForm volume_form_phi(const PotentialState& state, const ScalarField& F,
                           const KahlerBackground& bg);

/// Background Laplacian g^{i jbar} f_{i jbar}.
ScalarField laplacian(const ScalarField& f, const KahlerBackground& bg);

/// g^{k lbar} f_k f_lbar (the complex gradient norm used in identities such
/// as integral |grad phi|^2 = -integral phi Laplacian phi).
ScalarField complex_gradient_sq(const ScalarField& f, const KahlerBackground& bg);

/// |grad f|^2 := 2 g^{k lbar} f_k f_lbar, the convention used for every
/// W^{1,p} norm and gradient barrier in this project.
ScalarField gradient_norm_sq(const ScalarField& f, const KahlerBackground& bg);

}  // namespace cma
