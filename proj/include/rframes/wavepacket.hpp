#pragma once

// Sampled two-packet entangled system and its center (mean) position.
//
// The density at r is 1/2 |psi1(r,a) psi2(r,a) + sign * psi1(r,b) psi2(r,b)|^2:
// both single-packet amplitudes are evaluated at the same point on one
// shared grid. Quadrature is the midpoint rule: every node is the center of
// a cell of volume hx*hy*hz.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rframes/errors.hpp"
#include "rframes/parallel.hpp"

namespace rframes {

template <std::floating_point Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
using Index3 = Eigen::Array<Eigen::Index, 3, 1>;

/// Regular grid geometry: node (i, j, k) sits at origin + spacing .* (i, j, k).
template <std::floating_point Scalar>
struct GridGeometry {
  Vector3<Scalar> origin = Vector3<Scalar>::Zero();
  Vector3<Scalar> spacing = Vector3<Scalar>::Ones();
  Index3 dims = Index3::Constant(2);

  /// Cell-centered grid covering the box [lower, upper] with `dims` cells.
  static GridGeometry cell_centered(const Vector3<Scalar>& lower,
                                    const Vector3<Scalar>& upper,
                                    const Index3& dims) {
    if ((dims < 2).any())
      throw DomainError("dims", "need at least 2 nodes per axis");
    if (((upper - lower).array() <= 0).any())
      throw DomainError("upper", "box upper corner must exceed lower corner");
    GridGeometry g;
    g.dims = dims;
    g.spacing = ((upper - lower).array() / dims.template cast<Scalar>()).matrix();
    g.origin = lower + g.spacing / 2;
    return g;
  }

  Eigen::Index size() const { return dims.prod(); }
  Scalar cell_volume() const { return spacing.prod(); }

  // x varies fastest.
  Eigen::Index linear(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
    return i + dims[0] * (j + dims[1] * k);
  }
  Vector3<Scalar> position(Eigen::Index i, Eigen::Index j,
                           Eigen::Index k) const {
    return origin + spacing.cwiseProduct(
                        Vector3<Scalar>(Scalar(i), Scalar(j), Scalar(k)));
  }

  void validate() const {
    if ((dims < 2).any())
      throw GridInvariantError("dims", "need at least 2 nodes per axis");
    if (!(spacing.array() > 0).all() || !spacing.allFinite())
      throw GridInvariantError("spacing", "grid spacing must be > 0");
    if (!origin.allFinite())
      throw GridInvariantError("origin", "grid origin must be finite");
  }

  friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.origin == b.origin && a.spacing == b.spacing &&
           (a.dims == b.dims).all();
  }
};

/// Complex amplitude per node of a regular grid.
template <std::floating_point Scalar>
class AmplitudeGrid {
 public:
  using Complex = std::complex<Scalar>;
  using Values = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  explicit AmplitudeGrid(GridGeometry<Scalar> geometry)
      : geometry_(std::move(geometry)) {
    geometry_.validate();
    values_ = Values::Zero(geometry_.size());
  }

  AmplitudeGrid(GridGeometry<Scalar> geometry, Values values)
      : geometry_(std::move(geometry)), values_(std::move(values)) {
    geometry_.validate();
    if (values_.size() != geometry_.size())
      throw GridInvariantError(
          "size", "expected " + std::to_string(geometry_.size()) +
                      " values, got " + std::to_string(values_.size()));
    if (!values_.allFinite())
      throw GridInvariantError("values", "amplitudes must be finite");
  }

  const GridGeometry<Scalar>& geometry() const noexcept { return geometry_; }
  const Values& values() const noexcept { return values_; }
  Values& values() noexcept { return values_; }
  Complex operator[](Eigen::Index n) const { return values_[n]; }

  /// max |value| on the outer shell of nodes divided by max |value| overall;
  /// 0 for an all-zero grid.
  Scalar boundary_ratio() const {
    const Index3& d = geometry_.dims;
    Scalar peak = 0, shell = 0;
    for (Eigen::Index k = 0; k < d[2]; ++k)
      for (Eigen::Index j = 0; j < d[1]; ++j)
        for (Eigen::Index i = 0; i < d[0]; ++i) {
          const Scalar a = std::abs(values_[geometry_.linear(i, j, k)]);
          peak = std::max(peak, a);
          const bool on_shell = i == 0 || j == 0 || k == 0 || i == d[0] - 1 ||
                                j == d[1] - 1 || k == d[2] - 1;
          if (on_shell) shell = std::max(shell, a);
        }
    return peak > 0 ? shell / peak : Scalar(0);
  }

  void check_boundary_decay(Scalar tol, const std::string& label = "grid") const {
    const Scalar ratio = boundary_ratio();
    if (ratio > tol)
      throw GridInvariantError(
          "boundary_decay", label + ": boundary/peak amplitude ratio " +
                                std::to_string(static_cast<double>(ratio)) +
                                " exceeds tolerance " +
                                std::to_string(static_cast<double>(tol)));
  }

 private:
  GridGeometry<Scalar> geometry_;
  Values values_;
};

/// psi1, psi2 sampled for both branches a and b on one shared grid.
template <std::floating_point Scalar>
class EntangledPacketSystem {
 public:
  using Grid = AmplitudeGrid<Scalar>;

  EntangledPacketSystem(Grid psi1_a, Grid psi2_a, Grid psi1_b, Grid psi2_b,
                        int sign, Scalar time)
      : psi1_a_(std::move(psi1_a)),
        psi2_a_(std::move(psi2_a)),
        psi1_b_(std::move(psi1_b)),
        psi2_b_(std::move(psi2_b)),
        sign_(sign),
        time_(time) {
    const auto& g = psi1_a_.geometry();
    if (!(psi2_a_.geometry() == g && psi1_b_.geometry() == g &&
          psi2_b_.geometry() == g))
      throw GridInvariantError("congruence",
                               "all four amplitude grids must share origin, "
                               "spacing and dims");
    if (sign != 1 && sign != -1)
      throw DomainError("sign", "superposition sign must be +1 or -1");
    if (!std::isfinite(time)) throw DomainError("time", "must be finite");
  }

  const GridGeometry<Scalar>& geometry() const { return psi1_a_.geometry(); }
  const Grid& psi1_a() const { return psi1_a_; }
  const Grid& psi2_a() const { return psi2_a_; }
  const Grid& psi1_b() const { return psi1_b_; }
  const Grid& psi2_b() const { return psi2_b_; }
  int sign() const { return sign_; }
  Scalar time() const { return time_; }

  Scalar density(Eigen::Index n) const {
    const auto amp = psi1_a_[n] * psi2_a_[n] +
                     Scalar(sign_) * (psi1_b_[n] * psi2_b_[n]);
    return std::norm(amp) / 2;
  }

  void check_boundary_decay(Scalar tol) const {
    psi1_a_.check_boundary_decay(tol, "psi1_a");
    psi2_a_.check_boundary_decay(tol, "psi2_a");
    psi1_b_.check_boundary_decay(tol, "psi1_b");
    psi2_b_.check_boundary_decay(tol, "psi2_b");
  }

 private:
  Grid psi1_a_, psi2_a_, psi1_b_, psi2_b_;
  int sign_;
  Scalar time_;
};

using GridGeometryd = GridGeometry<double>;
using AmplitudeGridd = AmplitudeGrid<double>;
using EntangledPacketSystemd = EntangledPacketSystem<double>;

/// Density 1/2 |psi1 psi2 (a) +- psi1 psi2 (b)|^2 at node (i, j, k).
template <std::floating_point Scalar>
Scalar density(const EntangledPacketSystem<Scalar>& system, const Index3& node) {
  const Index3& d = system.geometry().dims;
  if ((node < 0).any() || (node >= d).any())
    throw DomainError("index", "node index outside grid dims");
  return system.density(system.geometry().linear(node[0], node[1], node[2]));
}

template <std::floating_point Scalar>
struct CenterEstimate {
  Vector3<Scalar> r_c = Vector3<Scalar>::Zero();
  Scalar norm{0};  // integral of the density
  Scalar time{0};
};

template <std::floating_point Scalar>
struct QuadratureOptions {
  bool normalize = true;  // false reproduces the bare 1/2-weighted integral
  Scalar norm_floor = Scalar(1e-300);
  bool check_boundary = true;
  Scalar boundary_tol = Scalar(1e-6);
  unsigned workers = 0;  // 0 = worker_count()
};

/// Midpoint-rule mean position. Normalized mode divides by the integrated
/// density; both modes report that integral in `norm`.
///
/// The sum is split into z-slabs evaluated concurrently and reduced in slab
/// order, so the result does not depend on the worker count.
template <std::floating_point Scalar>
CenterEstimate<Scalar> center_position(const EntangledPacketSystem<Scalar>& system,
                                       const QuadratureOptions<Scalar>& opts = {}) {
  if (opts.check_boundary) system.check_boundary_decay(opts.boundary_tol);
  const auto& g = system.geometry();
  const Index3& d = g.dims;

  struct Partial {
    Scalar mass{0};
    Vector3<Scalar> moment = Vector3<Scalar>::Zero();
  };
  std::vector<Partial> slabs(static_cast<std::size_t>(d[2]));
  parallel_for(
      slabs.size(),
      [&](std::size_t k) {
        Partial p;
        const auto kk = static_cast<Eigen::Index>(k);
        for (Eigen::Index j = 0; j < d[1]; ++j)
          for (Eigen::Index i = 0; i < d[0]; ++i) {
            const Scalar rho = system.density(g.linear(i, j, kk));
            p.mass += rho;
            p.moment += rho * g.position(i, j, kk);
          }
        slabs[k] = p;
      },
      opts.workers);

  Partial total;
  for (const auto& p : slabs) {
    total.mass += p.mass;
    total.moment += p.moment;
  }
  const Scalar dv = g.cell_volume();
  CenterEstimate<Scalar> out;
  out.norm = total.mass * dv;
  out.time = system.time();
  if (!(out.norm > opts.norm_floor))
    throw DegenerateSystemError("integrated density " +
                                std::to_string(static_cast<double>(out.norm)) +
                                " is below the normalization floor");
  out.r_c = opts.normalize ? Vector3<Scalar>(total.moment / total.mass)
                           : Vector3<Scalar>(total.moment * dv);
  return out;
}

/// Least-squares slope of r_C(t) over the estimates (central difference for
/// two samples). Times must be strictly increasing.
template <std::floating_point Scalar>
Vector3<Scalar> fit_velocity(std::span<const CenterEstimate<Scalar>> samples) {
  if (samples.size() < 2)
    throw DomainError("snapshots", "velocity fit needs at least 2 snapshots");
  for (std::size_t n = 1; n < samples.size(); ++n)
    if (!(samples[n].time > samples[n - 1].time))
      throw DomainError("time", "snapshot times must be strictly increasing");

  const Scalar count = Scalar(samples.size());
  Scalar t_mean = 0;
  Vector3<Scalar> r_mean = Vector3<Scalar>::Zero();
  for (const auto& s : samples) {
    t_mean += s.time;
    r_mean += s.r_c;
  }
  t_mean /= count;
  r_mean /= count;
  Scalar stt = 0;
  Vector3<Scalar> str = Vector3<Scalar>::Zero();
  for (const auto& s : samples) {
    const Scalar dt = s.time - t_mean;
    stt += dt * dt;
    str += dt * (s.r_c - r_mean);
  }
  return str / stt;
}

/// Velocity of the center frame from a time-ordered snapshot sequence.
template <std::floating_point Scalar>
Vector3<Scalar> center_frame_velocity(
    std::span<const EntangledPacketSystem<Scalar>> snapshots,
    const QuadratureOptions<Scalar>& opts = {}) {
  if (snapshots.size() < 2)
    throw DomainError("snapshots", "velocity fit needs at least 2 snapshots");
  std::vector<CenterEstimate<Scalar>> estimates;
  estimates.reserve(snapshots.size());
  for (const auto& s : snapshots) {
    if (!(s.geometry() == snapshots.front().geometry()))
      throw GridInvariantError("congruence",
                               "snapshots must share one grid geometry");
    estimates.push_back(center_position(s, opts));
  }
  return fit_velocity<Scalar>(estimates);
}

/// Same system sampled on every second node (spacing doubled).
template <std::floating_point Scalar>
EntangledPacketSystem<Scalar> coarsened(const EntangledPacketSystem<Scalar>& s) {
  const auto& g = s.geometry();
  GridGeometry<Scalar> cg;
  cg.origin = g.origin;
  cg.spacing = 2 * g.spacing;
  cg.dims = (g.dims + 1) / 2;
  if ((cg.dims < 2).any())
    throw DomainError("dims", "grid too small to coarsen");
  auto pick = [&](const AmplitudeGrid<Scalar>& src) {
    typename AmplitudeGrid<Scalar>::Values v(cg.size());
    for (Eigen::Index k = 0; k < cg.dims[2]; ++k)
      for (Eigen::Index j = 0; j < cg.dims[1]; ++j)
        for (Eigen::Index i = 0; i < cg.dims[0]; ++i)
          v[cg.linear(i, j, k)] = src[g.linear(2 * i, 2 * j, 2 * k)];
    return AmplitudeGrid<Scalar>(cg, std::move(v));
  };
  return EntangledPacketSystem<Scalar>(pick(s.psi1_a()), pick(s.psi2_a()),
                                       pick(s.psi1_b()), pick(s.psi2_b()),
                                       s.sign(), s.time());
}

/// |r_C(h) - r_C(2h)|: a conservative error bar for the midpoint estimate.
template <std::floating_point Scalar>
Scalar quadrature_error_estimate(const EntangledPacketSystem<Scalar>& system,
                                 const CenterEstimate<Scalar>& fine,
                                 QuadratureOptions<Scalar> opts = {}) {
  opts.check_boundary = false;
  const auto coarse = center_position(coarsened(system), opts);
  return (fine.r_c - coarse.r_c).norm();
}

// ---------------------------------------------------------------------------
// Gaussian fixtures

/// psi(r) proportional to exp(-|r - center|^2 / (4 width^2) + i k.r).
template <std::floating_point Scalar>
struct GaussianPacket {
  Vector3<Scalar> center = Vector3<Scalar>::Zero();
  Scalar width{1};
  Vector3<Scalar> wavevector = Vector3<Scalar>::Zero();
  Vector3<Scalar> velocity = Vector3<Scalar>::Zero();  // rigid drift, m/s
};

/// One branch psi1 * psi2, scaled so the integral of |psi1 psi2|^2 equals
/// `weight`.
template <std::floating_point Scalar>
struct GaussianBranch {
  GaussianPacket<Scalar> first;
  GaussianPacket<Scalar> second;
  Scalar weight{1};
};

template <std::floating_point Scalar>
struct GaussianPairSpec {
  GaussianBranch<Scalar> a;
  GaussianBranch<Scalar> b;
  int sign{1};
  Scalar time{0};
  GridGeometry<Scalar> grid;
  Scalar boundary_tol = Scalar(1e-6);
};

using GaussianPacketd = GaussianPacket<double>;
using GaussianBranchd = GaussianBranch<double>;
using GaussianPairSpecd = GaussianPairSpec<double>;

namespace detail {

// Closed-form integral of exp(-|r-r1|^2/(2 s1^2) - |r-r2|^2/(2 s2^2)) over R^3.
template <typename Scalar>
Scalar gaussian_product_norm(const GaussianPacket<Scalar>& p,
                             const GaussianPacket<Scalar>& q) {
  const Scalar a = 1 / (2 * p.width * p.width);
  const Scalar b = 1 / (2 * q.width * q.width);
  const Scalar sep2 = (p.center - q.center).squaredNorm();
  return std::pow(std::numbers::pi_v<Scalar> / (a + b), Scalar(1.5)) *
         std::exp(-a * b / (a + b) * sep2);
}

template <typename Scalar>
AmplitudeGrid<Scalar> sample_packet(const GridGeometry<Scalar>& g,
                                    const GaussianPacket<Scalar>& p,
                                    Scalar prefactor, Scalar time) {
  AmplitudeGrid<Scalar> grid(g);
  if (prefactor == 0) return grid;
  const Vector3<Scalar> center = p.center + time * p.velocity;
  const Scalar inv4s2 = 1 / (4 * p.width * p.width);
  auto& v = grid.values();
  for (Eigen::Index k = 0; k < g.dims[2]; ++k)
    for (Eigen::Index j = 0; j < g.dims[1]; ++j)
      for (Eigen::Index i = 0; i < g.dims[0]; ++i) {
        const Vector3<Scalar> r = g.position(i, j, k);
        const Scalar env = prefactor * std::exp(-(r - center).squaredNorm() * inv4s2);
        v[g.linear(i, j, k)] = std::polar(env, p.wavevector.dot(r));
      }
  return grid;
}

}  // namespace detail

/// Samples the four Gaussian amplitudes of `spec` at spec.time.
/// Throws GridInvariantError("boundary_decay") when the box is too small for
/// the requested widths.
template <std::floating_point Scalar>
EntangledPacketSystem<Scalar> make_gaussian_pair(const GaussianPairSpec<Scalar>& spec) {
  auto prefactor = [](const GaussianBranch<Scalar>& br) -> Scalar {
    if (!(br.first.width > 0) || !(br.second.width > 0))
      throw DomainError("width", "packet widths must be > 0");
    if (!(br.weight >= 0)) throw DomainError("weight", "must be >= 0");
    if (br.weight == 0) return 0;
    return std::pow(br.weight / detail::gaussian_product_norm(br.first, br.second),
                    Scalar(0.25));
  };
  const Scalar na = prefactor(spec.a);
  const Scalar nb = prefactor(spec.b);
  spec.grid.validate();
  EntangledPacketSystem<Scalar> system(
      detail::sample_packet(spec.grid, spec.a.first, na, spec.time),
      detail::sample_packet(spec.grid, spec.a.second, na, spec.time),
      detail::sample_packet(spec.grid, spec.b.first, nb, spec.time),
      detail::sample_packet(spec.grid, spec.b.second, nb, spec.time),
      spec.sign, spec.time);
  system.check_boundary_decay(spec.boundary_tol);
  return system;
}

}  // namespace rframes
