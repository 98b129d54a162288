#include "qbayes/prior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbayes/rng.hpp"

namespace qbayes {

namespace {

BlochVector uniform_direction(Philox& rng) {
    const double z = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * M_PI * rng.next_double();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

// Piecewise-linear density on a uniform grid over [0,1], sampled by
// inverting its piecewise-quadratic CDF segment by segment.
class TabulatedRadialDensity {
public:
    explicit TabulatedRadialDensity(const std::vector<double>& values) : f_(values) {
        if (f_.size() < 2) {
            throw InvalidPriorError("isotropic-radial: need at least two density samples");
        }
        for (double v : f_) {
            if (!(v >= 0.0)) {
                throw InvalidPriorError("isotropic-radial: density must be nonnegative");
            }
        }
        h_ = 1.0 / static_cast<double>(f_.size() - 1);
        cdf_.resize(f_.size(), 0.0);
        for (size_t i = 1; i < f_.size(); ++i) {
            cdf_[i] = cdf_[i - 1] + 0.5 * (f_[i - 1] + f_[i]) * h_;
        }
        const double total = cdf_.back();
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw InvalidPriorError("isotropic-radial: density is not normalizable on [0,1]");
        }
        for (double& v : cdf_) v /= total;
        for (double& v : f_) v /= total;
    }

    double sample(double u) const {
        const size_t seg = static_cast<size_t>(
            std::upper_bound(cdf_.begin(), cdf_.end() - 1, u) - cdf_.begin());
        const size_t i = seg == 0 ? 0 : seg - 1;
        const double r0 = static_cast<double>(i) * h_;
        const double du = u - cdf_[i];
        const double fa = f_[i], fb = f_[i + 1];
        const double slope = (fb - fa) / h_;
        double t;
        if (std::abs(slope) < 1e-300) {
            t = fa > 0.0 ? du / fa : 0.0;
        } else {
            // Solve (slope/2) t^2 + fa t - du = 0 for the root in [0, h].
            const double disc = std::max(0.0, fa * fa + 2.0 * slope * du);
            t = (-fa + std::sqrt(disc)) / slope;
        }
        return std::clamp(r0 + std::clamp(t, 0.0, h_), 0.0, 1.0);
    }

private:
    std::vector<double> f_;
    std::vector<double> cdf_;
    double h_;
};

}  // namespace

std::vector<BlochVector> sample_bloch_uniform(int count, uint64_t seed, uint64_t stream) {
    if (count < 1) throw InvalidArgumentError("sample_bloch_uniform: count must be >= 1");
    Philox rng(seed, stream);
    std::vector<BlochVector> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double r = std::cbrt(rng.next_double());
        BlochVector d = uniform_direction(rng);
        out.push_back({r * d.x, r * d.y, r * d.z});
    }
    return out;
}

std::vector<BlochVector> sample_pure_haar(int count, uint64_t seed, uint64_t stream) {
    if (count < 1) throw InvalidArgumentError("sample_pure_haar: count must be >= 1");
    Philox rng(seed, stream);
    std::vector<BlochVector> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(uniform_direction(rng));
    return out;
}

double bures_radius_cdf(double r) {
    r = std::clamp(r, 0.0, 1.0);
    return (2.0 / M_PI) * (std::asin(r) - r * std::sqrt(std::max(0.0, 1.0 - r * r)));
}

std::vector<BlochVector> sample_bures(int count, uint64_t seed, uint64_t stream) {
    if (count < 1) throw InvalidArgumentError("sample_bures: count must be >= 1");
    Philox rng(seed, stream);
    std::vector<BlochVector> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double u = rng.next_double();
        // Invert the radius CDF by bisection; 64 steps pin the radius to
        // ~5e-20, far below every downstream tolerance.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 64; ++it) {
            const double mid = 0.5 * (lo + hi);
            (bures_radius_cdf(mid) < u ? lo : hi) = mid;
        }
        const double r = 0.5 * (lo + hi);
        BlochVector d = uniform_direction(rng);
        out.push_back({r * d.x, r * d.y, r * d.z});
    }
    return out;
}

Ensemble discretize_prior(const PriorSpec& spec) {
    if (spec.kind == PriorKind::Atoms) {
        if (spec.atoms.empty()) throw InvalidPriorError("atoms prior: empty atom list");
        std::vector<DensityOperator> states;
        std::vector<double> weights;
        states.reserve(spec.atoms.size());
        weights.reserve(spec.atoms.size());
        for (const auto& [w, s] : spec.atoms) {
            weights.push_back(w);
            states.push_back(s);
        }
        return Ensemble::make(std::move(states), std::move(weights));
    }

    if (spec.atom_count < 1) throw InvalidPriorError("prior: atom_count must be >= 1");
    std::vector<BlochVector> points;
    switch (spec.kind) {
        case PriorKind::UniformBall:
            points = sample_bloch_uniform(spec.atom_count, spec.seed);
            break;
        case PriorKind::PureHaar:
            points = sample_pure_haar(spec.atom_count, spec.seed);
            break;
        case PriorKind::Bures:
            points = sample_bures(spec.atom_count, spec.seed);
            break;
        case PriorKind::IsotropicRadial: {
            TabulatedRadialDensity density(spec.radial_density);
            Philox rng(spec.seed, 0);
            points.reserve(static_cast<size_t>(spec.atom_count));
            for (int i = 0; i < spec.atom_count; ++i) {
                const double r = density.sample(rng.next_double());
                BlochVector d = uniform_direction(rng);
                points.push_back({r * d.x, r * d.y, r * d.z});
            }
            break;
        }
        case PriorKind::Atoms:
            break;  // handled above
    }

    std::vector<DensityOperator> states;
    states.reserve(points.size());
    for (const BlochVector& b : points) states.push_back(density_from_bloch(b));
    return Ensemble::uniform(std::move(states));
}

}  // namespace qbayes
