#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wew/linalg.hpp"

namespace wew::sdp {

using linalg::CMat;

// Linear objective over nonnegative scalars p and one Hermitian PSD matrix
// variable W, subject to linear "greater-or-equal" constraints
//
//   minimize  c_p . p  +  Tr(C_W W)
//   s.t.      a_j . p  +  Tr(S_j W)  >=  b_j     for each constraint j
//             p >= 0,  W PSD.
//
// Either block may be absent (n_scalars == 0 or psd_dim == 0).
struct ConicProblem {
    int n_scalars = 0;
    int psd_dim = 0;
    std::vector<double> scalar_cost;  // length n_scalars
    CMat matrix_cost;                 // psd_dim x psd_dim Hermitian (ignored if psd_dim == 0)

    struct Constraint {
        std::vector<double> scalar_coeff;  // length n_scalars
        CMat matrix_coeff;                 // Hermitian; empty when psd_dim == 0
        double bound = 0.0;
    };
    std::vector<Constraint> constraints;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIterations };

const char* to_string(SolveStatus s);

struct ConicSolution {
    SolveStatus status = SolveStatus::MaxIterations;
    std::vector<double> scalars;  // p >= 0
    CMat matrix_value;            // W PSD (Hermitian), empty when psd_dim == 0
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double gap = 0.0;  // |primal - dual| / max(1, |primal|, |dual|)
    int iterations = 0;

    std::vector<double> duals;                 // y_j >= 0, one per constraint
    std::vector<double> constraint_values;     // a_j.p + Tr(S_j W)
    double max_primal_residual = 0.0;          // max_j violation_j / (1 + |b_j|)
    double max_dual_residual = 0.0;            // scaled dual residual norm
    std::vector<double> infeasibility_ray;     // Farkas certificate when Infeasible
    std::string message;
};

struct SolverOptions {
    double tol = 1e-7;        // in [1e-10, 1e-2]
    int max_iterations = 200;
    double step_fraction = 0.98;
};

// Primal-dual path-following interior-point solve. Deterministic: identical
// inputs give bit-identical outputs. The Hermitian block is handled internally
// through its real symmetric embedding.
ConicSolution solve(const ConicProblem& problem, const SolverOptions& options);
ConicSolution solve(const ConicProblem& problem, double tol = 1e-7);

// Debug text format, one constraint per record. Values round-trip exactly.
void dump(const ConicProblem& problem, std::ostream& os);
ConicProblem load(std::istream& is);

}  // namespace wew::sdp
