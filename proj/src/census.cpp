#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "pg3/verify.hpp"

namespace pg3 {
namespace {

// Everything about (q, d) that does not depend on the candidate: per-monomial
// point values, gradient values, per-line restriction matrices and per-plane
// division matrices. Point values, restrictions and residuals are all linear
// in the coefficient vector, which is what makes the sweep cheap.
struct CensusTables {
  FieldPtr field;
  std::uint32_t q = 0, d = 0;
  std::vector<Mono> monos;
  std::vector<ProjPoint> points;  // ascending, so index lookup is a bisection
  std::size_t C = 0, Npt = 0;

  std::vector<std::vector<std::uint16_t>> value;          // [m][pt]
  std::array<std::vector<std::uint16_t>, 4> grad;         // [axis][pt*C + m]

  struct LineData {
    std::vector<std::uint32_t> pts;     // q+1 point indices
    std::vector<std::uint16_t> restr;   // [m*(d+1) + k]
  };
  std::vector<LineData> lines;

  struct PlaneData {
    std::vector<std::uint32_t> pts;     // q^2+q+1 point indices
    std::vector<std::uint16_t> resid;   // [m*C + j]: division remainder
  };
  std::vector<PlaneData> planes;

  std::vector<std::uint64_t> prefix;  // candidate blocks by first-nonzero slot
  std::uint64_t total = 0;
};

std::size_t point_index(const CensusTables& T, const ProjPoint& P) {
  const auto it = std::lower_bound(T.points.begin(), T.points.end(), P);
  return static_cast<std::size_t>(it - T.points.begin());
}

CensusTables build_tables(FieldPtr field, std::uint32_t d,
                          std::uint64_t budget) {
  CensusTables T;
  T.field = field;
  const Field& F = *field;
  T.q = F.q();
  T.d = d;
  T.monos = monomials_of_degree(d);
  T.C = T.monos.size();
  T.points = enumerate_points(F);
  T.Npt = T.points.size();

  // total = 1 + q + ... + q^{C-1}, guarded against the budget as we go.
  T.prefix.assign(T.C + 1, 0);
  std::vector<std::uint64_t> block(T.C, 0);
  std::uint64_t total = 0;
  for (std::size_t j = T.C; j-- > 0;) {
    // candidates with first nonzero coefficient at slot j: q^{C-1-j}
    std::uint64_t b = 1;
    for (std::size_t i = 0; i < T.C - 1 - j; ++i) {
      b *= T.q;
      if (b > budget) break;
    }
    block[j] = b;
    total += b;
    if (total > budget) {
      throw budget_error("census budget exceeded: (q^" + std::to_string(T.C) +
                         " - 1)/(q - 1) candidates at q=" + std::to_string(T.q) +
                         ", budget " + std::to_string(budget));
    }
  }
  for (std::size_t j = 0; j < T.C; ++j) T.prefix[j + 1] = T.prefix[j] + block[j];
  T.total = total;

  T.value.assign(T.C, std::vector<std::uint16_t>(T.Npt, 0));
  for (auto& g : T.grad) g.assign(T.Npt * T.C, 0);
  for (std::size_t m = 0; m < T.C; ++m) {
    const Mono& mono = T.monos[m];
    for (std::size_t pt = 0; pt < T.Npt; ++pt) {
      const auto& P = T.points[pt].c;
      std::uint32_t v = 1;
      for (int i = 0; i < 4 && v != 0; ++i) {
        if (mono.e[static_cast<std::size_t>(i)] != 0)
          v = F.mul(v, F.pow(P[static_cast<std::size_t>(i)],
                             mono.e[static_cast<std::size_t>(i)]));
      }
      T.value[m][pt] = static_cast<std::uint16_t>(v);
      for (int axis = 0; axis < 4; ++axis) {
        const std::uint32_t e = mono.e[static_cast<std::size_t>(axis)];
        if (e == 0) continue;
        const std::uint32_t s = F.from_int(e);
        if (s == 0) continue;
        std::uint32_t g = s;
        for (int i = 0; i < 4 && g != 0; ++i) {
          const std::uint32_t ei = mono.e[static_cast<std::size_t>(i)] -
                                   (i == axis ? 1u : 0u);
          if (ei != 0)
            g = F.mul(g, F.pow(P[static_cast<std::size_t>(i)], ei));
        }
        T.grad[static_cast<std::size_t>(axis)][pt * T.C + m] =
            static_cast<std::uint16_t>(g);
      }
    }
  }

  for (const Line& L : enumerate_lines(F)) {
    CensusTables::LineData ld;
    for (const ProjPoint& P : points_on_line(F, L)) {
      ld.pts.push_back(static_cast<std::uint32_t>(point_index(T, P)));
    }
    ld.restr.assign(T.C * (d + 1), 0);
    for (std::size_t m = 0; m < T.C; ++m) {
      const BinaryForm r = Form::monomial(field, T.monos[m], 1)
                               .restrict_to_line(L.row0(), L.row1());
      for (std::uint32_t k = 0; k <= d; ++k) {
        ld.restr[m * (d + 1) + k] = static_cast<std::uint16_t>(r.coeff(k));
      }
    }
    T.lines.push_back(std::move(ld));
  }

  std::map<Mono, std::size_t, MonoDescLex> mono_index;
  for (std::size_t m = 0; m < T.C; ++m) mono_index.emplace(T.monos[m], m);

  for (const ProjPoint& coeffs : T.points) {
    CensusTables::PlaneData pd;
    for (std::size_t pt = 0; pt < T.Npt; ++pt) {
      std::uint32_t dot = 0;
      for (int i = 0; i < 4; ++i) {
        dot = F.add(dot, F.mul(coeffs.c[static_cast<std::size_t>(i)],
                               T.points[pt].c[static_cast<std::size_t>(i)]));
      }
      if (dot == 0) pd.pts.push_back(static_cast<std::uint32_t>(pt));
    }
    int k = 0;
    while (coeffs.c[static_cast<std::size_t>(k)] == 0) ++k;
    Mat4 M = Mat4::identity();
    for (int j = 0; j < 4; ++j) {
      M.at(k, j) = j == k ? 0 : F.neg(coeffs.c[static_cast<std::size_t>(j)]);
    }
    pd.resid.assign(T.C * T.C, 0);
    for (std::size_t m = 0; m < T.C; ++m) {
      const Form r = Form::monomial(field, T.monos[m], 1).substituted(M);
      for (const auto& [mm, cc] : r.terms()) {
        pd.resid[m * T.C + mono_index.at(mm)] = static_cast<std::uint16_t>(cc);
      }
    }
    T.planes.push_back(std::move(pd));
  }
  return T;
}

void decode_candidate(const CensusTables& T, std::uint64_t idx,
                      std::vector<std::uint16_t>& c) {
  c.assign(T.C, 0);
  const auto it = std::upper_bound(T.prefix.begin(), T.prefix.end(), idx);
  const std::size_t j = static_cast<std::size_t>(it - T.prefix.begin()) - 1;
  c[j] = 1;
  std::uint64_t offset = idx - T.prefix[j];
  for (std::size_t i = j + 1; i < T.C; ++i) {
    c[i] = static_cast<std::uint16_t>(offset % T.q);
    offset /= T.q;
  }
}

Form candidate_form(const CensusTables& T,
                    const std::vector<std::uint16_t>& c) {
  Form f(T.field, T.d);
  for (std::size_t m = 0; m < T.C; ++m) {
    if (c[m] != 0) f.add_term(T.monos[m], c[m]);
  }
  return f;
}

struct Evaluation {
  bool passes_filter = false;  // smooth at m = 1 and no plane component
  std::uint32_t N = 0;
  std::uint64_t nu = 0;
};

// Scratch-carrying evaluator so the hot loop allocates nothing.
class Engine {
 public:
  explicit Engine(const CensusTables& T)
      : T_(T), F_(*T.field), coeffs_(T.C), val_(T.Npt), zero_(T.Npt) {}

  const std::vector<std::uint16_t>& coeffs() const { return coeffs_; }

  // prune_below: when nonzero (max-only mode), line counting may stop once
  // nu can no longer reach either prune_below or the cap.
  Evaluation run(std::uint64_t idx, std::uint64_t prune_below) {
    Evaluation ev;
    decode_candidate(T_, idx, coeffs_);

    std::fill(val_.begin(), val_.end(), std::uint16_t{0});
    for (std::size_t m = 0; m < T_.C; ++m) {
      const std::uint32_t cm = coeffs_[m];
      if (cm == 0) continue;
      const std::uint16_t* row = T_.value[m].data();
      if (cm == 1) {
        for (std::size_t pt = 0; pt < T_.Npt; ++pt)
          val_[pt] = static_cast<std::uint16_t>(F_.add(val_[pt], row[pt]));
      } else {
        for (std::size_t pt = 0; pt < T_.Npt; ++pt)
          val_[pt] = static_cast<std::uint16_t>(
              F_.add(val_[pt], F_.mul(cm, row[pt])));
      }
    }
    ev.N = 0;
    for (std::size_t pt = 0; pt < T_.Npt; ++pt) {
      zero_[pt] = val_[pt] == 0;
      ev.N += zero_[pt];
    }

    // m = 1 singularity filter
    for (std::size_t pt = 0; pt < T_.Npt; ++pt) {
      if (!zero_[pt]) continue;
      bool all_zero = true;
      for (int axis = 0; axis < 4 && all_zero; ++axis) {
        const std::uint16_t* gr =
            T_.grad[static_cast<std::size_t>(axis)].data() + pt * T_.C;
        std::uint32_t sum = 0;
        for (std::size_t m = 0; m < T_.C; ++m) {
          if (coeffs_[m] != 0) sum = F_.add(sum, F_.mul(coeffs_[m], gr[m]));
        }
        all_zero = sum == 0;
      }
      if (all_zero) return ev;  // singular rational point
    }

    // plane-component filter: sampling first, exact division on survivors
    for (const auto& plane : T_.planes) {
      bool covers = true;
      for (const std::uint32_t pt : plane.pts) {
        if (!zero_[pt]) {
          covers = false;
          break;
        }
      }
      if (!covers) continue;
      bool divisible = true;
      for (std::size_t jj = 0; jj < T_.C && divisible; ++jj) {
        std::uint32_t acc = 0;
        for (std::size_t m = 0; m < T_.C; ++m) {
          if (coeffs_[m] != 0)
            acc = F_.add(acc, F_.mul(coeffs_[m], plane.resid[m * T_.C + jj]));
        }
        divisible = acc == 0;
      }
      if (divisible) return ev;  // has an F_q-plane component
    }

    ev.passes_filter = true;

    const std::uint64_t cap = cap_lines_for(T_.q, T_.d);
    const std::size_t nlines = T_.lines.size();
    for (std::size_t li = 0; li < nlines; ++li) {
      if (prune_below != 0) {
        const std::uint64_t reachable = ev.nu + (nlines - li);
        if (reachable < prune_below && reachable <= cap) break;
      }
      const auto& ld = T_.lines[li];
      bool sampled = true;
      for (const std::uint32_t pt : ld.pts) {
        if (!zero_[pt]) {
          sampled = false;
          break;
        }
      }
      if (!sampled) continue;
      // symbolic confirmation: the restriction must vanish identically
      bool on = true;
      for (std::uint32_t k = 0; k <= T_.d && on; ++k) {
        std::uint32_t acc = 0;
        for (std::size_t m = 0; m < T_.C; ++m) {
          if (coeffs_[m] != 0)
            acc = F_.add(acc,
                         F_.mul(coeffs_[m], ld.restr[m * (T_.d + 1) + k]));
        }
        on = acc == 0;
      }
      if (on) ++ev.nu;
    }
    return ev;
  }

 private:
  const CensusTables& T_;
  const Field& F_;
  std::vector<std::uint16_t> coeffs_;
  std::vector<std::uint16_t> val_;
  std::vector<std::uint8_t> zero_;
};

// Deeper singularity search for apparent violators: a cap-exceeding
// candidate that is genuinely nonsingular would contradict the theorem, so
// it is re-checked over F_{q^m} up to deep_max before being recorded.
// Returns the depth reached; sets singular.
std::uint32_t deep_recheck(const CensusTables& T,
                           const std::vector<std::uint16_t>& coeffs,
                           const CensusOptions& opt, bool& singular) {
  singular = false;
  const Surface S(candidate_form(T, coeffs));
  if (T.d == 2) return 1;  // m = 1 is exact for quadrics and already passed
  std::uint32_t checked = 1;
  for (std::uint32_t m = 2; m <= opt.deep_smooth_max_m; ++m) {
    ExtensionScan scan;
    try {
      scan = rational_singular_points(S, m, opt.scan_limits);
    } catch (const budget_error&) {
      break;
    }
    checked = m;
    if (!scan.singular.empty()) {
      singular = true;
      break;
    }
  }
  return checked;
}

struct WorkerOut {
  std::uint64_t filtered = 0;
  std::uint64_t max_nu = 0;
  std::map<std::uint64_t, std::uint64_t> hist;
  std::vector<CensusViolation> violations;
};

}  // namespace

CensusSummary census(FieldPtr field, std::uint32_t degree,
                     const CensusOptions& opt) {
  if (degree < 1) throw std::invalid_argument("census needs degree >= 1");
  const CensusTables T = build_tables(field, degree, opt.candidate_budget);
  const std::uint64_t cap = cap_lines_for(T.q, T.d);

  CensusSummary out;
  out.q = T.q;
  out.d = T.d;
  out.total_forms = T.total;
  out.cap_lines = cap;

  const unsigned jobs =
      std::max(1u, std::min<unsigned>(opt.jobs,
                                      static_cast<unsigned>(T.total) + 1u));
  std::vector<WorkerOut> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);

  auto range_of = [&](unsigned w) {
    const std::uint64_t lo = T.total * w / jobs;
    const std::uint64_t hi = T.total * (w + 1) / jobs;
    return std::pair<std::uint64_t, std::uint64_t>{lo, hi};
  };

  auto sweep = [&](unsigned w) {
    try {
      Engine eng(T);
      WorkerOut& res = results[w];
      const auto [lo, hi] = range_of(w);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        const std::uint64_t prune =
            opt.histogram ? 0 : std::max<std::uint64_t>(res.max_nu, 1);
        Evaluation ev = eng.run(idx, prune);
        if (!ev.passes_filter) continue;
        if (ev.nu > cap) {
          bool singular = false;
          const std::uint32_t checked =
              deep_recheck(T, eng.coeffs(), opt, singular);
          if (singular) continue;  // fails the hypothesis after all
          res.violations.push_back(
              CensusViolation{idx, candidate_form(T, eng.coeffs()).to_string(),
                              ev.N, ev.nu, checked});
        }
        ++res.filtered;
        res.max_nu = std::max(res.max_nu, ev.nu);
        if (opt.histogram) ++res.hist[ev.nu];
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (jobs == 1) {
    sweep(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(sweep, w);
    for (auto& t : threads) t.join();
  }
  for (unsigned w = 0; w < jobs; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
  }

  for (unsigned w = 0; w < jobs; ++w) {
    const WorkerOut& res = results[w];
    out.filtered_smooth += res.filtered;
    out.max_nu = std::max(out.max_nu, res.max_nu);
    for (const auto& [nu, n] : res.hist) out.nu_histogram[nu] += n;
    out.violations.insert(out.violations.end(), res.violations.begin(),
                          res.violations.end());
  }

  if (opt.histogram) {
    const auto it = out.nu_histogram.find(out.max_nu);
    out.attaining_count = it == out.nu_histogram.end() ? 0 : it->second;
  }

  // Second sweep for the attaining surfaces (and, without a histogram, the
  // exact attaining count): the maximum is known now, so collection is a
  // simple filter and stays deterministic for any job count.
  if (opt.collect_attaining || !opt.histogram) {
    std::vector<std::vector<AttainingRecord>> found(jobs);
    std::vector<std::exception_ptr> errors2(jobs);
    auto collect = [&](unsigned w) {
      try {
        Engine eng(T);
        const auto [lo, hi] = range_of(w);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          Evaluation ev = eng.run(idx, out.max_nu);
          if (!ev.passes_filter || ev.nu != out.max_nu) continue;
          if (ev.nu > cap) {
            bool singular = false;
            deep_recheck(T, eng.coeffs(), opt, singular);
            if (singular) continue;
          }
          found[w].push_back(AttainingRecord{
              idx, candidate_form(T, eng.coeffs()).to_string(), ev.N, ev.nu});
        }
      } catch (...) {
        errors2[w] = std::current_exception();
      }
    };
    if (jobs == 1) {
      collect(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(jobs);
      for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(collect, w);
      for (auto& t : threads) t.join();
    }
    for (unsigned w = 0; w < jobs; ++w) {
      if (errors2[w]) std::rethrow_exception(errors2[w]);
    }
    std::uint64_t count = 0;
    for (unsigned w = 0; w < jobs; ++w) {
      count += found[w].size();
      for (auto& rec : found[w]) {
        if (opt.collect_attaining &&
            out.attaining.size() < opt.max_attaining_kept) {
          out.attaining.push_back(std::move(rec));
        }
      }
    }
    out.attaining_count = count;
  }
  return out;
}

}  // namespace pg3
