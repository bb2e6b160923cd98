#ifndef NCL_BOCHNER_HPP
#define NCL_BOCHNER_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncl/error.hpp"
#include "ncl/moments.hpp"

namespace ncl {

namespace detail {

template <typename PhiFn>
double bochner_det_with(const std::vector<cplx>& betas, PhiFn&& phi)
{
    const auto k = static_cast<Eigen::Index>(betas.size());
    CMatrix d(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        d(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const cplx v = phi(betas[i] - betas[j]);
            d(i, j) = v;
            d(j, i) = std::conj(v); // Phi(-beta) = conj Phi(beta)
        }
    }
    const cplx det = Eigen::FullPivLU<CMatrix>(d).determinant();
    const double scale = std::max(1.0, std::pow(d.cwiseAbs().maxCoeff(), static_cast<double>(k)));
    if (std::abs(det.imag()) > 1e-9 * scale)
        throw NumericError("Bochner determinant has imaginary residue");
    return det.real();
}

inline void check_points(const std::vector<cplx>& betas)
{
    if (betas.size() < 2)
        throw ValidationError("Bochner determinant needs at least two points");
    for (std::size_t i = 0; i < betas.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (betas[i] == betas[j])
                throw ValidationError("Bochner points must be distinct");
}

} // namespace detail

/// D_k: determinant of [Phi(beta_i - beta_j)] with unit diagonal.
template <typename StateT>
double bochner_det(const StateT& state, const std::vector<cplx>& betas)
{
    detail::check_points(betas);
    return detail::bochner_det_with(betas, [&](cplx b) { return char_function(state, b); });
}

struct BochnerResult
{
    double value;
    std::vector<cplx> betas;
};

/// Minimizes D_k over point sets inside |beta| <= radius. beta_1 is pinned at
/// the origin (D_k is translation invariant); the others scan a grid_n x grid_n
/// lattice, then a seeded random refinement polishes the best tuple.
template <typename StateT>
BochnerResult bochner_search(const StateT& state, int k, double radius, int grid_n, std::uint64_t seed,
                             int refine_steps = 400)
{
    if (k != 2 && k != 3)
        throw ValidationError("bochner_search supports k = 2 or 3");
    if (grid_n < 2)
        throw ValidationError("bochner_search needs grid_n >= 2");
    if (!(radius > 0.0))
        throw ValidationError("bochner_search radius must be positive");

    // Grid point i sits at -radius + i h = u h / 2 with u = 2i - (grid_n - 1),
    // so every difference (and the pinned origin) has integer half-step
    // coordinates and Phi can be cached on them.
    const double h = 2.0 * radius / (grid_n - 1);
    using Coord = std::pair<long, long>;
    std::vector<Coord> grid;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            const Coord c{2L * i - (grid_n - 1), 2L * j - (grid_n - 1)};
            const double r = 0.5 * h * std::hypot(double(c.first), double(c.second));
            if (r > 0.0 && r <= radius * (1.0 + 1e-12))
                grid.push_back(c);
        }
    auto to_beta = [h](Coord c) { return cplx{0.5 * h * c.first, 0.5 * h * c.second}; };

    std::map<Coord, cplx> cache;
    auto lattice_phi = [&](Coord c) {
        auto it = cache.find(c);
        if (it != cache.end())
            return it->second;
        const cplx val = char_function(state, to_beta(c));
        cache.emplace(c, val);
        return val;
    };

    BochnerResult best{std::numeric_limits<double>::infinity(), {}};
    auto consider = [&](const std::vector<Coord>& pts) {
        std::vector<cplx> betas;
        for (const auto& c : pts)
            betas.push_back(to_beta(c));
        const double value = detail::bochner_det_with(betas, [&](cplx b) {
            return lattice_phi({std::lround(2.0 * b.real() / h), std::lround(2.0 * b.imag() / h)});
        });
        if (value < best.value)
            best = {value, std::move(betas)};
    };

    const Coord origin{0, 0};
    if (k == 2) {
        for (const auto& b : grid)
            consider({origin, b});
    } else {
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                consider({origin, grid[i], grid[j]});
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double step = h / 2.0;
    for (int s = 0; s < refine_steps; ++s) {
        std::vector<cplx> trial = best.betas;
        bool valid = true;
        for (std::size_t i = 1; i < trial.size(); ++i) {
            trial[i] += cplx{step * normal(rng), step * normal(rng)};
            if (std::abs(trial[i]) > radius)
                trial[i] *= radius / std::abs(trial[i]);
        }
        for (std::size_t i = 0; i < trial.size() && valid; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (trial[i] == trial[j])
                    valid = false;
        if (!valid)
            continue;
        const double value = bochner_det(state, trial);
        if (value < best.value)
            best = {value, std::move(trial)};
        if ((s + 1) % 50 == 0)
            step *= 0.5;
    }
    return best;
}

} // namespace ncl

#endif // NCL_BOCHNER_HPP
