#include "bintomo/enumeration/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>

#include "bintomo/common/parallel.hpp"
#include "bintomo/core/lattice.hpp"
#include "bintomo/dual/recovery.hpp"
#include "bintomo/dual/solvers.hpp"

namespace bintomo {
namespace {

TernaryImage intersection_of_masks(int n,
                                   const std::vector<std::uint32_t>& masks) {
  const int cells = n * n;
  std::uint32_t all_ones = masks[0];
  std::uint32_t all_zeros = ~masks[0];
  for (std::uint32_t m : masks) {
    all_ones &= m;
    all_zeros &= ~m;
  }
  TernaryImage img;
  img.n = n;
  img.pixels.resize(cells);
  for (int i = 0; i < cells; ++i) {
    const std::uint32_t bit = 1u << i;
    if (all_ones & bit) {
      img.pixels[i] = Ternary::High;
    } else if (all_zeros & bit) {
      img.pixels[i] = Ternary::Low;
    } else {
      img.pixels[i] = Ternary::Undetermined;
    }
  }
  return img;
}

}  // namespace

BinaryImage image_from_mask(int n, std::uint32_t mask) {
  BinaryImage img;
  img.n = n;
  img.labels.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n * n; ++i) img.labels[i] = (mask >> i) & 1u;
  return img;
}

ClassificationMap enumerate_all(int n, const LatticeGeometry& geom) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("enumeration supports n between 1 and 4");
  }
  const int cells = n * n;
  const std::int32_t rows = lattice_row_count(n, geom);

  // line index of every pixel for every direction, offset into stacked rows
  std::vector<std::int32_t> line_of_pixel(
      static_cast<std::size_t>(geom.directions.size()) * cells);
  std::vector<std::int32_t> base(rows, 0);  // all-(-1) image projections
  {
    std::int32_t offset = 0;
    for (std::size_t d = 0; d < geom.directions.size(); ++d) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          const std::int32_t line =
              offset + lattice_line_index(n, geom.directions[d], r, c);
          line_of_pixel[d * cells + r * n + c] = line;
          base[line] -= 1;
        }
      }
      offset += lattice_line_count(n, geom.directions[d]);
    }
  }

  ClassificationMap classes;
  const std::uint64_t total = 1ull << cells;
  std::vector<std::int32_t> key(rows);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    key.assign(base.begin(), base.end());
    for (int i = 0; i < cells; ++i) {
      if ((mask >> i) & 1u) {
        for (std::size_t d = 0; d < geom.directions.size(); ++d) {
          key[line_of_pixel[d * cells + i]] += 2;
        }
      }
    }
    InstanceClassification& cls = classes[key];
    if (cls.solutions.empty()) cls.projection_key = key;
    cls.solutions.push_back(static_cast<std::uint32_t>(mask));
  }

  for (auto& [k, cls] : classes) {
    cls.unique = cls.solutions.size() == 1;
    cls.intersection = intersection_of_masks(n, cls.solutions);
  }
  return classes;
}

TernaryImage intersection_of(const std::vector<BinaryImage>& solutions) {
  if (solutions.empty()) {
    throw std::invalid_argument("intersection of an empty solution list");
  }
  const int n = solutions[0].n;
  TernaryImage img;
  img.n = n;
  img.pixels.resize(solutions[0].labels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    bool any0 = false;
    bool any1 = false;
    for (const BinaryImage& s : solutions) {
      if (s.n != n || s.labels.size() != img.pixels.size()) {
        throw std::invalid_argument("solution shapes differ");
      }
      (s.labels[i] ? any1 : any0) = true;
    }
    img.pixels[i] = any0 && any1 ? Ternary::Undetermined
                                 : (any1 ? Ternary::High : Ternary::Low);
  }
  return img;
}

bool hvd_convexity_check(const BinaryImage& x) {
  const int n = x.n;
  const Direction dirs[4] = {Direction::Horizontal, Direction::Vertical,
                             Direction::Diagonal, Direction::Antidiagonal};
  for (Direction d : dirs) {
    const int lines = lattice_line_count(n, d);
    for (int line = 0; line < lines; ++line) {
      // walk the line in pixel order and require one contiguous run
      int state = 0;  // 0: before run, 1: inside run, 2: after run
      bool ok = true;
      for (int r = 0; r < n && ok; ++r) {
        for (int c = 0; c < n; ++c) {
          if (lattice_line_index(n, d, r, c) != line) continue;
          const bool set = x.labels[static_cast<std::size_t>(r) * n + c] != 0;
          if (set) {
            if (state == 0) state = 1;
            if (state == 2) {
              ok = false;
              break;
            }
          } else if (state == 1) {
            state = 2;
          }
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

EnumerationSummary summarize_counts(int n, const LatticeGeometry& geom,
                                    const ClassificationMap& classes) {
  EnumerationSummary s;
  s.n = n;
  s.m_dirs = static_cast<int>(geom.directions.size());
  for (const auto& [key, cls] : classes) {
    const std::int64_t size = static_cast<std::int64_t>(cls.solutions.size());
    s.total += size;
    if (cls.unique) {
      s.unique_count += size;
    } else {
      s.multiple_count += size;
    }
  }
  return s;
}

EnumerationSummary verify_dual_conjecture(int n, const LatticeGeometry& geom,
                                          const SolverConfig& solver_cfg,
                                          const VerifyOptions& opts) {
  ClassificationMap classes = enumerate_all(n, geom);
  EnumerationSummary summary = summarize_counts(n, geom, classes);

  const GridSpec grid{n, 1.0};
  const SparseOperator op = build_lattice_operator(grid, geom);
  const GreyLevels levels = GreyLevels::symmetric();

  std::vector<const InstanceClassification*> work;
  work.reserve(classes.size());
  for (const auto& [key, cls] : classes) work.push_back(&cls);

  if (opts.sample_classes > 0 &&
      static_cast<std::size_t>(opts.sample_classes) < work.size()) {
    std::vector<const InstanceClassification*> picked;
    std::vector<const InstanceClassification*> rest;
    for (const InstanceClassification* cls : work) {
      if (!cls->unique && geom.directions.size() == 4) {
        picked.push_back(cls);  // keep every switching class
      } else {
        rest.push_back(cls);
      }
    }
    std::mt19937_64 eng(opts.sample_seed);
    std::shuffle(rest.begin(), rest.end(), eng);
    const std::size_t want = static_cast<std::size_t>(opts.sample_classes);
    for (const InstanceClassification* cls : rest) {
      if (picked.size() >= want) break;
      picked.push_back(cls);
    }
    work.swap(picked);
  }

  struct Tally {
    std::int64_t verified_unique = 0;
    std::int64_t correct_unique = 0;
    std::int64_t verified_multiple = 0;
    std::int64_t correct_multiple = 0;
    std::int64_t correct_multiple_relaxed = 0;
    std::int64_t failures = 0;
  };
  const int threads =
      opts.threads > 0 ? opts.threads : default_thread_count();
  std::vector<Tally> tallies(static_cast<std::size_t>(threads));

  std::atomic<std::size_t> slot{0};
  parallel_for(
      work.size(),
      [&](std::size_t begin, std::size_t end) {
        Tally& t = tallies[slot.fetch_add(1)];
        std::vector<double> y(op.rows());
        for (std::size_t idx = begin; idx < end; ++idx) {
          const InstanceClassification& cls = *work[idx];
          for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = static_cast<double>(cls.projection_key[i]);
          }
          const std::int64_t size =
              static_cast<std::int64_t>(cls.solutions.size());
          DualSolution sol =
              solve_dual_primal_dual(op, y, levels, {}, solver_cfg);
          if (!sol.converged) t.failures += 1;
          TernaryImage tern = recover_primal(n, sol.nu, levels,
                                             solver_cfg.zero_threshold);
          if (cls.unique) {
            t.verified_unique += size;
            const BinaryImage completed =
                complete_ternary(tern, UndeterminedFill::LowLevel);
            if (completed == image_from_mask(n, cls.solutions[0])) {
              t.correct_unique += size;
            }
          } else {
            t.verified_multiple += size;
            if (tern == cls.intersection) {
              t.correct_multiple += size;
              t.correct_multiple_relaxed += size;
            } else {
              bool relaxed = true;
              for (std::size_t i = 0; i < tern.pixels.size() && relaxed; ++i) {
                if (tern.pixels[i] != Ternary::Undetermined &&
                    tern.pixels[i] != cls.intersection.pixels[i]) {
                  relaxed = false;
                }
              }
              if (relaxed) t.correct_multiple_relaxed += size;
            }
          }
        }
      },
      threads);

  for (const Tally& t : tallies) {
    summary.verified_unique += t.verified_unique;
    summary.dual_correct_unique += t.correct_unique;
    summary.verified_multiple += t.verified_multiple;
    summary.dual_correct_multiple += t.correct_multiple;
    summary.dual_correct_multiple_relaxed += t.correct_multiple_relaxed;
    summary.dual_failures += t.failures;
  }
  return summary;
}

}  // namespace bintomo
