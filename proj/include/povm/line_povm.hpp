#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "povm/errors.hpp"
#include "povm/hermitian.hpp"
#include "povm/matrix.hpp"
#include "povm/real_set.hpp"

namespace povm {

/// Uniform sampling lattice x_j = (j - (n-1)/2) * spacing, j = 0..n-1,
/// centered on zero. Differences of grid points are exact integer multiples
/// of the spacing, which the evaluators below rely on.
class LineGrid {
public:
    LineGrid(std::size_t n_points, double spacing) : n_(n_points), dx_(spacing) {
        if (n_ < 2) throw RangeError("grid needs at least two points");
        if (!(std::isfinite(dx_) && dx_ > 0.0)) throw RangeError("grid spacing must be positive");
    }

    std::size_t n_points() const { return n_; }
    double spacing() const { return dx_; }
    double point(std::size_t j) const {
        return (static_cast<double>(j) - 0.5 * static_cast<double>(n_ - 1)) * dx_;
    }
    double min() const { return point(0); }
    double max() const { return point(n_ - 1); }

    bool operator==(const LineGrid& o) const { return n_ == o.n_ && dx_ == o.dx_; }
    bool operator!=(const LineGrid& o) const { return !(*this == o); }

private:
    std::size_t n_;
    double dx_;
};

/// Probability density used as a smearing kernel, discretized on the grid's
/// difference lattice by the midpoint rule. Closed-form kinds evaluate
/// pointwise; the table kind interpolates stored samples. Construction
/// checks nonnegativity and that the lattice sums to 1 within 1e-10, so a
/// kernel the lattice cannot represent is rejected rather than silently
/// renormalized.
class DensityProfile {
public:
    enum class Kind { uniform, gaussian, delta, table };

    static DensityProfile uniform(const LineGrid& grid, double half_width, double center = 0.0) {
        if (!(std::isfinite(half_width) && half_width > 0.0))
            throw RangeError("uniform half width must be positive");
        DensityProfile p(grid, Kind::uniform, center);
        p.par_ = half_width;
        p.validate();
        return p;
    }

    static DensityProfile gaussian(const LineGrid& grid, double sigma, double center = 0.0) {
        if (!(std::isfinite(sigma) && sigma > 0.0)) throw RangeError("sigma must be positive");
        DensityProfile p(grid, Kind::gaussian, center);
        p.par_ = sigma;
        p.validate();
        return p;
    }

    static DensityProfile delta(const LineGrid& grid, double center = 0.0) {
        DensityProfile p(grid, Kind::delta, center);
        p.validate();
        return p;
    }

    static DensityProfile from_table(const LineGrid& grid, std::vector<double> samples) {
        if (samples.size() != grid.n_points())
            throw DimensionError("table length does not match grid");
        for (double v : samples)
            if (!(std::isfinite(v) && v >= 0.0))
                throw ValidationError("table entries must be nonnegative and finite");
        DensityProfile p(grid, Kind::table, 0.0);
        p.table_ = std::move(samples);
        p.validate();
        return p;
    }

    Kind kind() const { return kind_; }
    const LineGrid& grid() const { return grid_; }
    double center() const { return center_; }
    double parameter() const { return par_; }  // half width or sigma
    const std::vector<double>& table() const { return table_; }

    double density(double u) const {
        switch (kind_) {
            case Kind::uniform: {
                const double r = std::abs(u - center_);
                const double snap = 1e-9 * grid_.spacing();
                if (std::abs(r - par_) <= snap) return 0.25 / par_;  // boundary half weight
                return r < par_ ? 0.5 / par_ : 0.0;
            }
            case Kind::gaussian: {
                const double z = (u - center_) / par_;
                return std::exp(-0.5 * z * z) / (par_ * std::sqrt(k_two_pi));
            }
            case Kind::delta: {
                const double snap = 1e-9 * grid_.spacing();
                return std::abs(u - center_) <= snap ? 1.0 / grid_.spacing() : 0.0;
            }
            case Kind::table: {
                if (u < grid_.min() || u > grid_.max()) return 0.0;
                const double pos = (u - grid_.min()) / grid_.spacing();
                const std::size_t lo =
                    std::min(static_cast<std::size_t>(pos), grid_.n_points() - 2);
                const double w = pos - static_cast<double>(lo);
                return (1.0 - w) * table_[lo] + w * table_[lo + 1];
            }
        }
        return 0.0;
    }

    double mean() const {
        if (kind_ != Kind::table) return center_;
        double m = 0.0;
        for (std::size_t j = 0; j < table_.size(); ++j)
            m += grid_.point(j) * table_[j] * grid_.spacing();
        return m;
    }

    double variance() const {
        switch (kind_) {
            case Kind::uniform: return par_ * par_ / 3.0;
            case Kind::gaussian: return par_ * par_;
            case Kind::delta: return 0.0;
            case Kind::table: {
                const double m = mean();
                double v = 0.0;
                for (std::size_t j = 0; j < table_.size(); ++j) {
                    const double d = grid_.point(j) - m;
                    v += d * d * table_[j] * grid_.spacing();
                }
                return v;
            }
        }
        return 0.0;
    }

    // Effective support [lo, hi]; density is negligible (< 1e-13 of total
    // mass) outside. Used to decide which rows see the truncation edge.
    double support_lo() const {
        switch (kind_) {
            case Kind::uniform: return center_ - par_;
            case Kind::gaussian: return center_ - 8.0 * par_;
            case Kind::delta: return center_;
            case Kind::table: return grid_.min() - grid_.spacing();
        }
        return 0.0;
    }

    double support_hi() const {
        switch (kind_) {
            case Kind::uniform: return center_ + par_;
            case Kind::gaussian: return center_ + 8.0 * par_;
            case Kind::delta: return center_;
            case Kind::table: return grid_.max() + grid_.spacing();
        }
        return 0.0;
    }

    /// Midpoint-rule mass on the difference lattice m * spacing,
    /// |m| <= n-1. Equals 1 within 1e-10 for any valid profile.
    double lattice_total() const {
        const long n = static_cast<long>(grid_.n_points());
        double total = 0.0;
        for (long m = -(n - 1); m <= n - 1; ++m)
            total += density(static_cast<double>(m) * grid_.spacing());
        return total * grid_.spacing();
    }

private:
    DensityProfile(const LineGrid& grid, Kind kind, double center)
        : grid_(grid), kind_(kind), center_(center) {
        if (!std::isfinite(center)) throw RangeError("profile center is not finite");
    }

    void validate() const {
        const double total = lattice_total();
        if (std::abs(total - 1.0) > 1e-10)
            throw ValidationError("profile mass on the lattice is " + std::to_string(total) +
                                  ", not 1; spacing, width, or center is unrepresentable");
    }

    LineGrid grid_;
    Kind kind_;
    double center_;
    double par_ = 0.0;
    std::vector<double> table_;
};

/// Real diagonal operator on the grid. All observables in this module are
/// simultaneously diagonal in the position basis, so this is the only
/// operator representation the module needs; sup_norm is the operator norm.
class DiagonalOperator {
public:
    DiagonalOperator(const LineGrid& grid, std::vector<double> values)
        : grid_(grid), d_(std::move(values)) {
        if (d_.size() != grid_.n_points())
            throw DimensionError("diagonal length does not match grid");
    }

    const LineGrid& grid() const { return grid_; }
    std::size_t dim() const { return d_.size(); }
    double value(std::size_t j) const { return d_[j]; }
    const std::vector<double>& values() const { return d_; }

    double sup_norm() const {
        double m = 0.0;
        for (double v : d_) m = std::max(m, std::abs(v));
        return m;
    }

    ComplexMatrix to_matrix() const { return ComplexMatrix::diagonal(d_); }

private:
    LineGrid grid_;
    std::vector<double> d_;
};

inline DiagonalOperator operator-(const DiagonalOperator& a, const DiagonalOperator& b) {
    if (a.grid() != b.grid()) throw DimensionError("grid mismatch");
    std::vector<double> d(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) d[j] = a.value(j) - b.value(j);
    return DiagonalOperator(a.grid(), std::move(d));
}

/// Sharp position operator Q = diag(x_j).
inline DiagonalOperator position_operator(const LineGrid& grid) {
    std::vector<double> d(grid.n_points());
    for (std::size_t j = 0; j < grid.n_points(); ++j) d[j] = grid.point(j);
    return DiagonalOperator(grid, std::move(d));
}

/// Spectral measure of Q: the indicator of X on the grid. Exactly
/// idempotent and multiplicative.
inline DiagonalOperator position_spectral(const LineGrid& grid, const RealSet& x) {
    std::vector<double> d(grid.n_points());
    for (std::size_t j = 0; j < grid.n_points(); ++j)
        d[j] = x.contains(grid.point(j)) ? 1.0 : 0.0;
    return DiagonalOperator(grid, std::move(d));
}

/// Translation covariant smearing of sharp position: the effect of X is
/// the convolution (indicator of X) * f evaluated at Q. Shares every
/// spectral projection of Q but is not itself projection valued.
class SmearedPositionPovm {
public:
    explicit SmearedPositionPovm(DensityProfile profile) : f_(std::move(profile)) {}

    const DensityProfile& profile() const { return f_; }
    const LineGrid& grid() const { return f_.grid(); }
    std::size_t dim() const { return grid().n_points(); }

    /// Rows whose smearing window lies fully inside the grid. Only these
    /// are free of truncation-edge effects.
    std::vector<bool> interior_mask() const {
        const LineGrid& g = grid();
        const double pad = 0.5 * g.spacing();
        std::vector<bool> mask(g.n_points());
        for (std::size_t j = 0; j < g.n_points(); ++j) {
            const double x = g.point(j);
            mask[j] = (x - f_.support_hi() >= g.min() - pad) &&
                      (x - f_.support_lo() <= g.max() + pad);
        }
        return mask;
    }

private:
    DensityProfile f_;
};

struct SmearedValue {
    DiagonalOperator op;
    double boundary_loss = 0.0;  // largest mass any row loses past the grid edge
    bool boundary_warning = false;
};

/// E(X) with entries sum over x_k in X of f(x_j - x_k) * spacing.
/// Diagonal entries lie in [0, 1]; rows near the edge under-count whatever
/// part of X falls beyond the grid, reported as boundary_loss and flagged
/// above 1e-6.
inline SmearedValue smeared_value(const SmearedPositionPovm& s, const RealSet& x) {
    const LineGrid& g = s.grid();
    const DensityProfile& f = s.profile();
    const long n = static_cast<long>(g.n_points());
    const double dx = g.spacing();
    std::vector<double> diag(g.n_points(), 0.0);
    for (long j = 0; j < n; ++j) {
        double acc = 0.0;
        for (long k = 0; k < n; ++k) {
            if (!x.contains(g.point(static_cast<std::size_t>(k)))) continue;
            acc += f.density(static_cast<double>(j - k) * dx);
        }
        diag[static_cast<std::size_t>(j)] = acc * dx;
    }

    // Mass of X beyond the grid that an untruncated lattice would count.
    const long ext = static_cast<long>(
        std::ceil(std::max(std::abs(f.support_lo()), std::abs(f.support_hi())) / dx)) + 2;
    double worst = 0.0;
    for (long j = 0; j < n; ++j) {
        double loss = 0.0;
        for (long k = -ext; k < n + ext; ++k) {
            if (k >= 0 && k < n) continue;
            const double xk = (static_cast<double>(k) - 0.5 * static_cast<double>(n - 1)) * dx;
            if (!x.contains(xk)) continue;
            loss += f.density(static_cast<double>(j - k) * dx);
        }
        worst = std::max(worst, loss * dx);
    }

    SmearedValue out{DiagonalOperator(g, std::move(diag)), worst, worst > 1e-6};
    return out;
}

/// First moment of the smeared observable: diagonal entries
/// sum over k of x_k f(x_j - x_k) * spacing. On interior rows this equals
/// x_j - mean(f) up to lattice roundoff.
inline DiagonalOperator first_moment_line(const SmearedPositionPovm& s) {
    const LineGrid& g = s.grid();
    const DensityProfile& f = s.profile();
    const long n = static_cast<long>(g.n_points());
    const double dx = g.spacing();
    std::vector<double> diag(g.n_points(), 0.0);
    for (long j = 0; j < n; ++j) {
        double acc = 0.0;
        for (long k = 0; k < n; ++k)
            acc += g.point(static_cast<std::size_t>(k)) *
                   f.density(static_cast<double>(j - k) * dx);
        diag[static_cast<std::size_t>(j)] = acc * dx;
    }
    return DiagonalOperator(g, std::move(diag));
}

/// max over interior rows of |F1_jj - (x_j - mean(f))|.
inline double first_moment_interior_defect(const SmearedPositionPovm& s) {
    const DiagonalOperator f1 = first_moment_line(s);
    const std::vector<bool> interior = s.interior_mask();
    const double m = s.profile().mean();
    double defect = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j) {
        if (!interior[j]) continue;
        defect = std::max(defect, std::abs(f1.value(j) - (s.grid().point(j) - m)));
    }
    return defect;
}

/// Variance bookkeeping for one state: smeared variance against sharp
/// variance plus kernel variance. The residual is the additivity defect;
/// discretization_bound is a conservative midpoint-rule bound on how much
/// of it the lattice itself can account for.
struct VarianceAdditivity {
    double mean_smeared = 0.0;
    double var_smeared = 0.0;
    double mean_sharp = 0.0;
    double var_sharp = 0.0;
    double var_profile = 0.0;
    double residual = 0.0;
    double discretization_bound = 0.0;
};

inline VarianceAdditivity variance_additivity_check(const SmearedPositionPovm& s,
                                                    const StateVector& phi) {
    if (phi.dim() != s.dim()) throw DimensionError("state dimension mismatch");
    const LineGrid& g = s.grid();
    const DensityProfile& f = s.profile();
    const std::vector<bool> interior = s.interior_mask();
    double edge_mass = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j)
        if (!interior[j]) edge_mass += std::norm(phi.amplitude(j));
    if (edge_mass > 1e-8)
        throw PreconditionError("state carries " + std::to_string(edge_mass) +
                                " probability on truncation-edge rows");

    const long n = static_cast<long>(g.n_points());
    const double dx = g.spacing();
    std::vector<double> q(g.n_points());
    for (std::size_t j = 0; j < g.n_points(); ++j) q[j] = std::norm(phi.amplitude(j));

    // Outcome distribution of the smeared observable: p_k = sum_j q_j f(x_j - x_k) dx.
    VarianceAdditivity rep;
    double p_sum = 0.0, p_mean = 0.0, p_second = 0.0;
    for (long k = 0; k < n; ++k) {
        double pk = 0.0;
        for (long j = 0; j < n; ++j)
            pk += q[static_cast<std::size_t>(j)] * f.density(static_cast<double>(j - k) * dx);
        pk *= dx;
        const double xk = g.point(static_cast<std::size_t>(k));
        p_sum += pk;
        p_mean += xk * pk;
        p_second += xk * xk * pk;
    }
    rep.mean_smeared = p_mean;
    rep.var_smeared = p_second - p_mean * p_mean;

    double s_mean = 0.0, s_second = 0.0;
    for (std::size_t j = 0; j < g.n_points(); ++j) {
        const double xj = g.point(j);
        s_mean += xj * q[j];
        s_second += xj * xj * q[j];
    }
    rep.mean_sharp = s_mean;
    rep.var_sharp = s_second - s_mean * s_mean;
    rep.var_profile = f.variance();
    rep.residual = std::abs(rep.var_smeared - (rep.var_sharp + rep.var_profile));
    rep.discretization_bound = 0.5 * dx * dx;
    (void)p_sum;
    return rep;
}

/// Evidence that the first moment does not determine the observable: two
/// kernels with equal means produce first moments that agree on the common
/// interior (moment_gap ~ 0) while some effect operator separates them
/// (measure_gap of order the kernel-width difference).
struct NonuniquenessWitness {
    double moment_gap = 0.0;
    double measure_gap = 0.0;
    std::size_t witness_index = 0;  // index into the tested sets
    std::vector<double> per_set_gap;
};

inline NonuniquenessWitness nonuniqueness_witness(const SmearedPositionPovm& a,
                                                  const SmearedPositionPovm& b,
                                                  const std::vector<RealSet>& sets) {
    if (a.grid() != b.grid()) throw DimensionError("grid mismatch");
    if (sets.empty()) throw PreconditionError("no witness sets supplied");
    NonuniquenessWitness w;

    const DiagonalOperator f1a = first_moment_line(a);
    const DiagonalOperator f1b = first_moment_line(b);
    const std::vector<bool> ia = a.interior_mask();
    const std::vector<bool> ib = b.interior_mask();
    for (std::size_t j = 0; j < a.dim(); ++j)
        if (ia[j] && ib[j])
            w.moment_gap = std::max(w.moment_gap, std::abs(f1a.value(j) - f1b.value(j)));

    for (std::size_t i = 0; i < sets.size(); ++i) {
        const DiagonalOperator ea = smeared_value(a, sets[i]).op;
        const DiagonalOperator eb = smeared_value(b, sets[i]).op;
        const double gap = (ea - eb).sup_norm();
        w.per_set_gap.push_back(gap);
        if (gap > w.measure_gap) {
            w.measure_gap = gap;
            w.witness_index = i;
        }
    }
    return w;
}

inline std::vector<RealSet> default_witness_sets() {
    return {
        RealSet::from_intervals({{0.0, 0.5}}),
        RealSet::from_intervals({{-0.5, 0.5}}),
        RealSet::from_intervals({{0.0, 1.0}}),
        RealSet::from_intervals({{1.0, 2.0}}),
        RealSet::from_intervals({{-2.0, -1.0}}),
    };
}

/// State with Gaussian profile |amp|^2 of standard deviation sigma about
/// center, sampled on the grid.
inline StateVector gaussian_state(const LineGrid& grid, double sigma, double center) {
    if (!(sigma > 0.0)) throw RangeError("sigma must be positive");
    std::vector<Complex> amp(grid.n_points());
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        const double z = (grid.point(j) - center) / sigma;
        amp[j] = Complex(std::exp(-0.25 * z * z), 0.0);
    }
    return StateVector(std::move(amp));
}

}  // namespace povm
