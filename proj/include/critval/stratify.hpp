#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "critical_map.hpp"
#include "multi_index.hpp"
#include "numeric.hpp"

namespace critval {

// Partition of [n] into disjoint nonempty blocks, kept canonical:
// each block sorted ascending, blocks ordered by minimum element.
class SetPartition {
public:
    SetPartition(std::vector<std::vector<int>> blocks, int n) : blocks_(std::move(blocks)), n_(n) {
        if (n_ < 1) throw std::invalid_argument("SetPartition: n must be >= 1");
        std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
        int count = 0;
        for (auto& block : blocks_) {
            if (block.empty()) throw std::invalid_argument("SetPartition: empty block");
            std::sort(block.begin(), block.end());
            for (int e : block) {
                if (e < 1 || e > n_) throw std::invalid_argument("SetPartition: element out of range");
                if (seen[static_cast<std::size_t>(e)]) throw std::invalid_argument("SetPartition: repeated element");
                seen[static_cast<std::size_t>(e)] = true;
                ++count;
            }
        }
        if (count != n_) throw std::invalid_argument("SetPartition: blocks do not cover [n]");
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const std::vector<int>& x, const std::vector<int>& y) { return x.front() < y.front(); });
    }

    static SetPartition singletons(int n) {
        std::vector<std::vector<int>> blocks;
        for (int i = 1; i <= n; ++i) blocks.push_back({i});
        return SetPartition(std::move(blocks), n);
    }

    static SetPartition single_block(int n) {
        std::vector<int> block(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) block[static_cast<std::size_t>(i - 1)] = i;
        return SetPartition({std::move(block)}, n);
    }

    int n() const { return n_; }
    int ell() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    // canonical block index (1-based) containing element i
    int block_of(int i) const {
        if (i < 1 || i > n_) throw std::invalid_argument("SetPartition: element out of range");
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), i)) return static_cast<int>(b) + 1;
        throw std::logic_error("SetPartition: element not found");
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (b) s += ",";
            s += "{";
            for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
                if (i) s += ",";
                s += std::to_string(blocks_[b][i]);
            }
            s += "}";
        }
        return s + "}";
    }

    friend bool operator==(const SetPartition& a, const SetPartition& b) {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const SetPartition& a, const SetPartition& b) { return !(a == b); }

private:
    std::vector<std::vector<int>> blocks_;
    int n_;
};

// The partition grouping i and j whenever |z_i - z_j| <= tol, closed
// transitively (union-find), so the result is always a set partition
// even when the tolerance relation itself is not transitive.
inline SetPartition part_of(const ComplexPoint& z, double tol) {
    if (tol < 0) throw std::invalid_argument("part_of: tolerance must be >= 0");
    if (z.empty()) throw std::invalid_argument("part_of: empty point");
    const int n = static_cast<int>(z.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <= tol) {
                int ri = find(i), rj = find(j);
                if (ri != rj) parent[static_cast<std::size_t>(rj)] = ri;
            }
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) blocks[static_cast<std::size_t>(find(i))].push_back(i + 1);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const std::vector<int>& b) { return b.empty(); }),
                 blocks.end());
    return SetPartition(std::move(blocks), n);
}

// true iff every block of lambda is contained in some block of mu
inline bool refines(const SetPartition& lambda, const SetPartition& mu) {
    if (lambda.n() != mu.n()) throw std::invalid_argument("refines: ground-set size mismatch");
    for (const auto& block : lambda.blocks()) {
        const int target = mu.block_of(block.front());
        for (int e : block)
            if (mu.block_of(e) != target) return false;
    }
    return true;
}

// Flatten a point in the closure of the lambda-stratum to one value per
// block (canonical block order). Pure data rearrangement: the output is
// the coordinate at each block's minimum element, bit for bit.
inline ComplexPoint phi(const SetPartition& lambda, const ComplexPoint& z, double tol = 1e-9) {
    if (static_cast<int>(z.size()) != lambda.n()) throw std::invalid_argument("phi: dimension mismatch");
    ComplexPoint y;
    y.reserve(lambda.blocks().size());
    for (const auto& block : lambda.blocks()) {
        const Complex rep = z[static_cast<std::size_t>(block.front() - 1)];
        for (int e : block)
            if (std::abs(z[static_cast<std::size_t>(e - 1)] - rep) > tol)
                throw std::invalid_argument("phi: block coordinates disagree beyond tolerance");
        y.push_back(rep);
    }
    return y;
}

// Copy y_i onto every index of block i; inverse of phi on the closure.
inline ComplexPoint phi_inverse(const SetPartition& lambda, const ComplexPoint& y) {
    if (static_cast<int>(y.size()) != lambda.ell()) throw std::invalid_argument("phi_inverse: dimension mismatch");
    ComplexPoint z(static_cast<std::size_t>(lambda.n()));
    for (std::size_t b = 0; b < y.size(); ++b)
        for (int e : lambda.blocks()[b]) z[static_cast<std::size_t>(e - 1)] = y[b];
    return z;
}

// block sizes in canonical order
inline MultiIndex multiplicities_of(const SetPartition& lambda) {
    std::vector<int> a;
    a.reserve(lambda.blocks().size());
    for (const auto& block : lambda.blocks()) a.push_back(static_cast<int>(block.size()));
    return MultiIndex(std::move(a));
}

// theta restricted to the lambda-stratum: conjugate theta_a by the
// flattening, with a the block multiplicities.
inline ComplexPoint theta_lambda(const SetPartition& lambda, const ComplexPoint& z, double tol = 1e-9) {
    if (part_of(z, tol) != lambda) throw std::invalid_argument("theta_lambda: point is not in the given stratum");
    const ComplexPoint y = phi(lambda, z, tol);
    return phi_inverse(lambda, eval_theta_numeric(multiplicities_of(lambda), y));
}

struct CertifyOptions {
    double singular_coef = 1e-12;   // |det| must exceed singular_coef * scale^{mn}
    double condition_max = 1e12;
    double coincidence_tol = 1e-9;
};

struct CertifyResult {
    bool certified;
    Complex det;
    double condition_estimate;
};

// Numeric certificate that theta_lambda is a local homeomorphism at z:
// the flattened Jacobian determinant clears a homogeneity-compensated
// singularity threshold and the matrix is well conditioned. The
// threshold scales as scale^{mn} because det J_a is homogeneous of
// degree m*n.
inline CertifyResult certify_local_homeo(const SetPartition& lambda, const ComplexPoint& z,
                                         const CertifyOptions& opts = {}) {
    if (part_of(z, opts.coincidence_tol) != lambda)
        throw std::invalid_argument("certify_local_homeo: point is not in the given stratum");
    const ComplexPoint y = phi(lambda, z, opts.coincidence_tol);
    const MultiIndex a = multiplicities_of(lambda);
    const ComplexMatrix jac = eval_jacobian_numeric(a, y);
    const Complex det = complex_determinant(jac);
    const double condition = condition_inf(jac);
    double scale = 0.0;
    for (const Complex& c : y) scale = std::max(scale, std::abs(c));
    const double threshold = opts.singular_coef * std::pow(scale, a.m() * a.n());
    const bool certified = std::abs(det) > threshold && condition < opts.condition_max;
    return CertifyResult{certified, det, condition};
}

// Piecewise-linear path: at least two samples, uniform dimension.
class ComplexPath {
public:
    explicit ComplexPath(std::vector<ComplexPoint> samples) : samples_(std::move(samples)) {
        if (samples_.size() < 2) throw std::invalid_argument("ComplexPath: at least two samples required");
        for (const auto& s : samples_) {
            if (s.size() != samples_.front().size()) throw std::invalid_argument("ComplexPath: dimension mismatch");
            if (s.empty()) throw std::invalid_argument("ComplexPath: empty sample");
            if (!is_finite(s)) throw std::invalid_argument("ComplexPath: non-finite sample");
        }
    }

    int dim() const { return static_cast<int>(samples_.front().size()); }
    std::size_t size() const { return samples_.size(); }
    const ComplexPoint& at(std::size_t i) const { return samples_.at(i); }
    const std::vector<ComplexPoint>& samples() const { return samples_; }

    ComplexPath reversed() const {
        std::vector<ComplexPoint> rev(samples_.rbegin(), samples_.rend());
        return ComplexPath(std::move(rev));
    }

private:
    std::vector<ComplexPoint> samples_;
};

struct ContinuationOptions {
    double residual_tol = 1e-10;       // Newton corrector acceptance, infinity norm
    int max_corrector_iters = 50;
    double min_step = 1e-12;           // in arc-length units of the current segment
    double coincidence_tol = 1e-9;     // stratum membership and initial-point match
    double initial_step_fraction = 0.125;  // first step = segment / 8; also the step cap
};

// Numeric continuation failure. Carries every lifted sample accepted
// before the failure (starting with z0) so callers can inspect how far
// the tracker got.
class LiftError : public std::runtime_error {
public:
    LiftError(const std::string& what, std::vector<ComplexPoint> accepted)
        : std::runtime_error(what), accepted_(std::move(accepted)) {}

    const std::vector<ComplexPoint>& accepted() const { return accepted_; }

private:
    std::vector<ComplexPoint> accepted_;
};

namespace detail {

inline double inf_distance(const ComplexPoint& a, const ComplexPoint& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Newton iteration for theta(y) = target, converging when the residual
// drops below tol in the infinity norm. The residual is checked before
// the first update, so an already-converged point takes zero updates.
inline bool newton_correct(const ThetaEvaluator& eval, ComplexPoint& y, const ComplexPoint& target,
                           const ContinuationOptions& opts) {
    for (int iter = 0; iter <= opts.max_corrector_iters; ++iter) {
        const ComplexPoint value = eval.theta(y);
        ComplexPoint residual(value.size());
        double norm = 0.0;
        for (std::size_t i = 0; i < value.size(); ++i) {
            residual[i] = target[i] - value[i];
            norm = std::max(norm, std::abs(residual[i]));
        }
        if (!std::isfinite(norm)) return false;
        if (norm <= opts.residual_tol) return true;
        if (iter == opts.max_corrector_iters) return false;
        // the evaluator stores entry (i,j) = d theta_j / d z_i, so the
        // linear system for the variable update uses the transpose
        auto delta = solve_linear(transposed(eval.jacobian(y)), residual);
        if (!delta) return false;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += (*delta)[i];
    }
    return false;
}

}  // namespace detail

// Lift a motion of critical values through theta_lambda, starting at z0.
// The target is a polyline in C^n with block-constant coordinates; the
// tracker works on the phi-flattened system and emits one lifted sample
// per target vertex. Steps use a linear predictor along the segment and
// a Newton corrector; the step halves on corrector failure and doubles
// on success up to the initial fraction. The tracker never merges
// coordinates: approaching a smaller stratum surfaces as step underflow.
inline ComplexPath lift_path(const SetPartition& lambda, const ComplexPoint& z0, const ComplexPath& target,
                             const ContinuationOptions& opts = {}) {
    if (target.dim() != lambda.n()) throw std::invalid_argument("lift_path: target dimension mismatch");
    if (part_of(z0, opts.coincidence_tol) != lambda)
        throw std::invalid_argument("lift_path: start point is not in the given stratum");

    const MultiIndex a = multiplicities_of(lambda);
    const ThetaEvaluator eval(a);

    std::vector<ComplexPoint> flat_target;
    flat_target.reserve(target.size());
    for (const ComplexPoint& sample : target.samples()) flat_target.push_back(phi(lambda, sample, opts.coincidence_tol));

    ComplexPoint y = phi(lambda, z0, opts.coincidence_tol);
    if (detail::inf_distance(eval.theta(y), flat_target.front()) > opts.coincidence_tol)
        throw std::invalid_argument("lift_path: target does not start at theta_lambda(z0)");

    std::vector<ComplexPoint> lifted;
    lifted.reserve(target.size());
    lifted.push_back(z0);

    for (std::size_t seg = 0; seg + 1 < flat_target.size(); ++seg) {
        const ComplexPoint& from = flat_target[seg];
        const ComplexPoint& to = flat_target[seg + 1];
        ComplexPoint direction(from.size());
        double seg_len = 0.0;
        for (std::size_t i = 0; i < from.size(); ++i) {
            direction[i] = to[i] - from[i];
            seg_len = std::max(seg_len, std::abs(direction[i]));
        }
        double t = 0.0;
        double h = opts.initial_step_fraction;
        while (t < 1.0) {
            // land exactly on t=1 so the loop cannot stall on a rounding sliver
            const bool final_step = h >= 1.0 - t;
            const double step = final_step ? 1.0 - t : h;
            const double t_next = final_step ? 1.0 : t + h;
            ComplexPoint step_target(from.size());
            for (std::size_t i = 0; i < from.size(); ++i) step_target[i] = from[i] + t_next * direction[i];

            ComplexPoint predicted = y;
            ComplexPoint rhs(from.size());
            for (std::size_t i = 0; i < from.size(); ++i) rhs[i] = step * direction[i];
            bool ok = false;
            if (auto tangent = solve_linear(transposed(eval.jacobian(y)), rhs)) {
                for (std::size_t i = 0; i < y.size(); ++i) predicted[i] += (*tangent)[i];
                ok = detail::newton_correct(eval, predicted, step_target, opts);
            }
            if (ok) {
                y = std::move(predicted);
                t = t_next;
                h = std::min(h * 2.0, opts.initial_step_fraction);
            } else {
                h /= 2.0;
                if (h * seg_len < opts.min_step && seg_len > 0.0)
                    throw LiftError("lift_path: step underflow after corrector divergence at segment " +
                                        std::to_string(seg + 1) + ", t=" + std::to_string(t) +
                                        " (possible approach to a smaller stratum or a zero coordinate)",
                                    lifted);
                if (seg_len == 0.0) {
                    // constant segment whose corrector still failed: no step size can help
                    throw LiftError("lift_path: corrector divergence on a constant segment " + std::to_string(seg + 1),
                                    lifted);
                }
            }
        }
        lifted.push_back(phi_inverse(lambda, y));
    }
    return ComplexPath(std::move(lifted));
}

// Path file format: a header line "dim=<n>", then one sample per line
// as whitespace-separated "re im" pairs, n pairs per line.
inline ComplexPath read_path(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("read_path: empty input");
    const std::string prefix = "dim=";
    if (line.rfind(prefix, 0) != 0) throw std::invalid_argument("read_path: missing dim= header");
    int dim = 0;
    try {
        dim = std::stoi(line.substr(prefix.size()));
    } catch (const std::exception&) {
        throw std::invalid_argument("read_path: malformed dim= header");
    }
    if (dim < 1) throw std::invalid_argument("read_path: dimension must be >= 1");
    std::vector<ComplexPoint> samples;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream row(line);
        ComplexPoint sample;
        sample.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            double re, im;
            if (!(row >> re >> im)) throw std::invalid_argument("read_path: short sample line");
            sample.emplace_back(re, im);
        }
        double extra;
        if (row >> extra) throw std::invalid_argument("read_path: excess values on sample line");
        samples.push_back(std::move(sample));
    }
    return ComplexPath(std::move(samples));
}

inline void write_path(std::ostream& out, const ComplexPath& path) {
    out << "dim=" << path.dim() << "\n";
    out << std::setprecision(17);
    for (const ComplexPoint& sample : path.samples()) {
        for (std::size_t i = 0; i < sample.size(); ++i) {
            if (i) out << " ";
            out << sample[i].real() << " " << sample[i].imag();
        }
        out << "\n";
    }
}

}  // namespace critval
