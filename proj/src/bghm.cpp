#include "credrect/bghm.hpp"

#include "credrect/error.hpp"

#include <algorithm>
#include <numeric>

namespace credrect {

namespace {

// 1-based rank of every row along column j, ties by row order.
std::vector<std::size_t> column_ranks(const SampleBlock& x, Eigen::Index j) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x(static_cast<Eigen::Index>(a), j) < x(static_cast<Eigen::Index>(b), j);
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r + 1;
  return rank;
}

}  // namespace

std::vector<std::size_t> scores(const SampleBlock& batch) {
  const auto n = static_cast<std::size_t>(batch.rows());
  std::vector<std::size_t> min_rank(n, n + 1);
  std::vector<std::size_t> max_rank(n, 0);
  for (Eigen::Index j = 0; j < batch.cols(); ++j) {
    const auto rank = column_ranks(batch, j);
    for (std::size_t r = 0; r < n; ++r) {
      min_rank[r] = std::min(min_rank[r], rank[r]);
      max_rank[r] = std::max(max_rank[r], rank[r]);
    }
  }
  std::vector<std::size_t> s(n);
  for (std::size_t r = 0; r < n; ++r) s[r] = std::max(n + 1 - min_rank[r], max_rank[r]);
  return s;
}

std::size_t score_S(std::size_t point, const SampleBlock& batch) {
  if (point >= static_cast<std::size_t>(batch.rows())) throw Error(ErrorKind::OutOfRange, "point not in batch");
  return scores(batch)[point];
}

std::vector<std::uint32_t> shallow_depths(const SampleBlock& points, std::span<const std::uint64_t> seq,
                                          std::size_t limit) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (seq.size() != n) throw Error(ErrorKind::LengthMismatch, "one sequence number per point required");
  std::vector<std::uint32_t> depth(n, kDeep);
  if (n == 0) return depth;
  const bool full = 2 * limit + 1 >= n;
  const std::size_t h = full ? n : limit;
  const auto d = static_cast<std::int64_t>(points.cols());
#pragma omp parallel
  {
    std::vector<std::uint32_t> local(n, kDeep);
    std::vector<std::size_t> idx(n);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t jj = 0; jj < d; ++jj) {
      const auto j = static_cast<Eigen::Index>(jj);
      auto below = [&](std::size_t a, std::size_t b) {
        const double va = points(static_cast<Eigen::Index>(a), j);
        const double vb = points(static_cast<Eigen::Index>(b), j);
        return va < vb || (va == vb && seq[a] < seq[b]);
      };
      auto above = [&](std::size_t a, std::size_t b) { return below(b, a); };
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      if (full) {
        std::sort(idx.begin(), idx.end(), below);
        for (std::size_t r = 0; r < n; ++r) {
          const auto dep = static_cast<std::uint32_t>(std::min(r + 1, n - r));
          local[idx[r]] = std::min(local[idx[r]], dep);
        }
        continue;
      }
      std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(h - 1), idx.end(), below);
      std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(h), below);
      for (std::size_t r = 0; r < h; ++r) local[idx[r]] = std::min(local[idx[r]], static_cast<std::uint32_t>(r + 1));
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(h - 1), idx.end(), above);
      std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(h), above);
      for (std::size_t r = 0; r < h; ++r) local[idx[r]] = std::min(local[idx[r]], static_cast<std::uint32_t>(r + 1));
    }
#pragma omp critical
    for (std::size_t i = 0; i < n; ++i) depth[i] = std::min(depth[i], local[i]);
  }
  if (!full) {
    for (auto& v : depth) {
      if (v > limit) v = kDeep;
    }
  }
  return depth;
}

BghmResult bghm_rectangle(const SampleBlock& samples, std::size_t k, double nominal_alpha) {
  const auto m = static_cast<std::size_t>(samples.rows());
  const auto d = static_cast<std::size_t>(samples.cols());
  if (k < 1 || k > m) throw Error(ErrorKind::OutOfRange, "k must lie in [1, M]");
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "samples have no coordinates");

  auto s = scores(samples);
  std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k - 1), s.end());
  const std::size_t j_star = s[k - 1];

  BghmResult out;
  out.j_star = j_star;
  out.k = k;
  out.samples = m;
  out.t_hat = 2.0 * static_cast<double>(m + 1 - j_star) / static_cast<double>(m + 1);
  out.rect.lower.resize(d);
  out.rect.upper.resize(d);
  std::vector<double> column(m);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t r = 0; r < m; ++r) column[r] = samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    std::sort(column.begin(), column.end());
    out.rect.lower[j] = column[m - j_star];
    out.rect.upper[j] = column[j_star - 1];
  }
  out.rect.level_t = out.t_hat;
  out.rect.nominal_alpha = nominal_alpha;
  out.rect.method = Method::Bghm;
  return out;
}

BghmResult bghm_rectangle(const SampleBlock& samples, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
  const auto m = static_cast<std::size_t>(samples.rows());
  return bghm_rectangle(samples, m - floor_alpha_count(alpha, m), alpha);
}

}  // namespace credrect
