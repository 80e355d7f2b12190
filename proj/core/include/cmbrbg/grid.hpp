// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cmbrbg {

/// Iso-latitude Gauss-Legendre grid with band limit `lmax`.
///
/// n_theta = lmax + 1 Gauss-Legendre nodes in cos(theta), ordered from the
/// north pole southwards, and n_phi = 2 lmax + 1 equally spaced longitudes
/// starting at phi = 0. The quadrature is exact for the product of any two
/// functions band-limited at lmax.
class GaussLegendreGrid {
 public:
  GaussLegendreGrid() = default;
  explicit GaussLegendreGrid(int lmax);

  int lmax() const noexcept { return lmax_; }
  std::size_t n_theta() const noexcept { return cos_theta_.size(); }
  std::size_t n_phi() const noexcept { return n_phi_; }
  std::size_t n_pixels() const noexcept { return n_theta() * n_phi_; }

  std::span<const double> cos_theta() const noexcept { return cos_theta_; }
  /// Gauss-Legendre weights in cos(theta); they sum to 2.
  std::span<const double> ring_weights() const noexcept { return gl_weights_; }
  /// Solid angle carried by one pixel of ring j: w_j * 2 pi / n_phi.
  double pixel_weight(std::size_t ring) const noexcept { return pixel_weights_[ring]; }
  double phi(std::size_t k) const noexcept;

  /// Boundaries in cos(theta) of the cell owned by each ring. Cell j spans
  /// [edge(j+1), edge(j)] and has width equal to the ring's GL weight.
  double cell_edge(std::size_t j) const noexcept { return cell_edges_[j]; }

  friend bool operator==(const GaussLegendreGrid& a, const GaussLegendreGrid& b) noexcept {
    return a.lmax_ == b.lmax_ && a.n_phi_ == b.n_phi_;
  }

 private:
  int lmax_ = -1;
  std::size_t n_phi_ = 0;
  std::vector<double> cos_theta_;
  std::vector<double> gl_weights_;
  std::vector<double> pixel_weights_;
  std::vector<double> cell_edges_;
};

/// Temperature map on a Gauss-Legendre grid, row-major by ring, in uK.
struct SkyMap {
  GaussLegendreGrid grid;
  std::vector<double> pixels;
  std::string detector_id;
  bool masked = false;

  SkyMap() = default;
  explicit SkyMap(GaussLegendreGrid g, std::string id = {})
      : grid(std::move(g)), pixels(grid.n_pixels(), 0.0), detector_id(std::move(id)) {}

  double& at(std::size_t ring, std::size_t k) { return pixels[ring * grid.n_phi() + k]; }
  double at(std::size_t ring, std::size_t k) const { return pixels[ring * grid.n_phi() + k]; }
};

/// Per-pixel weights in [0, 1]; 1 keeps a pixel, 0 removes it.
class SkyMask {
 public:
  SkyMask(GaussLegendreGrid grid, std::vector<double> values);

  /// Keeps the whole sky.
  static SkyMask full(const GaussLegendreGrid& grid);
  /// Removes every direction with |cos(theta)| > cos_cut. Rings whose cell
  /// straddles the cut get the retained fraction of the cell, so f_sky equals
  /// the analytic band area cos_cut.
  static SkyMask galactic_band(const GaussLegendreGrid& grid, double cos_cut);

  const GaussLegendreGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Sum(mask * pixel solid angle) / 4 pi.
  double f_sky() const noexcept;

 private:
  GaussLegendreGrid grid_;
  std::vector<double> values_;
};

}  // namespace cmbrbg
