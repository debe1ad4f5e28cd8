#pragma once

/*
 * Extremal search over D_n:
 *  - enumerate_binary: exhaustive exact minimum of ‖A⁻¹‖²_F over all 2^{n²}
 *    {0,1}-matrices (n ≤ 5), via an integer adjugate kernel: for a {0,1}
 *    matrix, ‖A⁻¹‖² = (Σ cofactor²)/det², all in small integers.
 *  - sample_box: seeded uniform sampling of the box on the float path, with
 *    escalation to exact arithmetic whenever a margin falls below 1e−9.
 *  - descend: projected gradient descent on h(A) = ‖A⁻¹‖²_F with Armijo
 *    backtracking and per-entry clamping to [0,1].
 *
 * All three are deterministic for a fixed seed independent of worker count:
 * random draws are keyed by sample index, and block merges are associative.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eil/bounds.hpp"
#include "eil/errors.hpp"
#include "eil/exact.hpp"
#include "eil/float_lu.hpp"
#include "eil/io.hpp"
#include "eil/matrix.hpp"
#include "eil/parallel.hpp"
#include "eil/rng.hpp"

namespace eil {

inline constexpr int kEnumerateMaxOrder = 5;
inline constexpr double kArmijoC = 1e-4;
inline constexpr double kProjGradTol = 1e-8;
inline constexpr double kJitterRadius = 1e-2;
inline constexpr int kMaxRestarts = 10;
// slack when asserting sampled/descended values against the exact bound
inline constexpr double kDescendTol = 1e-6;

enum class Backend { enumerate, sample, descend };

inline const char* to_string(Backend b) {
    switch (b) {
    case Backend::enumerate:
        return "enumerate";
    case Backend::sample:
        return "sample";
    default:
        return "descend";
    }
}

struct SearchConfig {
    Backend backend = Backend::enumerate;
    int n = 3;
    std::uint64_t seed = 0;
    long long count = 100000; // sample draws
    int starts = 1;           // descend runs
    int max_iters = 10000;    // per descend run
    int workers = 1;
    bool canonical_prune = false; // enumerate: orbit-representative filter
    bool plant_identity = false;  // sample: replace draw 0 by the identity

    // Echoed into results. Deliberately excludes `workers`: partitioning must
    // not change result bytes, so it belongs to the run manifest only.
    json echo_json() const {
        json j;
        j["backend"] = to_string(backend);
        j["n"] = n;
        j["seed"] = seed;
        j["count"] = count;
        j["starts"] = starts;
        j["max_iters"] = max_iters;
        j["canonical_prune"] = canonical_prune;
        j["plant_identity"] = plant_identity;
        j["prng"] = kPrngName;
        return j;
    }
};

struct DescendRun {
    int start = 0;
    bool from_given_start = false;
    long long iters = 0;
    int restarts = 0;
    bool converged = false;
    bool failed_singular = false;
    double terminal = std::numeric_limits<double>::infinity();
    double pg_norm = std::numeric_limits<double>::infinity();

    json to_json() const {
        json j;
        j["start"] = start;
        j["from_given_start"] = from_given_start;
        j["iters"] = iters;
        j["restarts"] = restarts;
        j["converged"] = converged;
        j["failed_singular"] = failed_singular;
        j["terminal"] = fmt_double(terminal);
        j["pg_norm"] = fmt_double(pg_norm);
        return j;
    }
};

struct SearchResult {
    Backend backend = Backend::enumerate;
    int n = 0;
    Rational bound_sq;
    bool exact = false;
    Rational min_norm_sq;                // enumerate
    double min_norm_sq_float = std::numeric_limits<double>::infinity();
    std::uint64_t min_index = 0;         // sample: index of the minimizing draw
    long long examined = 0;
    long long singular = 0;
    long long minimizer_count = 0;       // enumerate
    std::vector<Matrix<int>> minimizers; // enumerate (all for n ≤ 3, else a prefix)
    bool pruned = false;
    long long escalations = 0;           // sample: draws re-checked exactly
    long long equality_candidates = 0;   // sample: exact equalities found
    long long violations = 0;            // exact-confirmed bound violations
    std::vector<DescendRun> runs;        // descend
    bool all_satisfy_bound = true;
    SearchConfig config;

    json to_json() const {
        json j;
        j["backend"] = to_string(backend);
        j["n"] = n;
        j["bound_sq"] = bound_sq.str();
        j["examined"] = examined;
        j["singular"] = singular;
        j["all_satisfy_bound"] = all_satisfy_bound;
        j["config"] = config.echo_json();
        switch (backend) {
        case Backend::enumerate: {
            j["min_norm_sq"] = min_norm_sq.str();
            j["minimizer_count"] = minimizer_count;
            json list = json::array();
            for (const auto& m : minimizers)
                list.push_back(matrix_to_json(to_rational(m)));
            j["minimizers"] = std::move(list);
            j["pruned"] = pruned;
            break;
        }
        case Backend::sample:
            j["min_norm_sq"] = fmt_double(min_norm_sq_float);
            j["min_index"] = min_index;
            j["escalations"] = escalations;
            j["equality_candidates"] = equality_candidates;
            j["violations"] = violations;
            break;
        case Backend::descend: {
            j["min_norm_sq"] = fmt_double(min_norm_sq_float);
            json list = json::array();
            for (const auto& r : runs)
                list.push_back(r.to_json());
            j["runs"] = std::move(list);
            j["violations"] = violations;
            break;
        }
        }
        return j;
    }
};

// ---------------------------------------------------------------------------
// Exhaustive {0,1} enumeration.

inline Matrix<int> mask_to_matrix(std::uint64_t mask, int n) {
    Matrix<int> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = static_cast<int>(mask >> (i * n + j) & 1);
    return m;
}

inline std::uint64_t matrix_to_mask(const Matrix<int>& m) {
    const int n = m.order();
    std::uint64_t mask = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m(i, j))
                mask |= 1ULL << (i * n + j);
    return mask;
}

namespace detail {

// Determinant of the submatrix with the masked rows/columns removed,
// by expansion along the first unmasked row. Entries are {0,1} so every
// intermediate fits comfortably in 64 bits for n ≤ 5.
inline long long det_masked(const int (&a)[5][5], int n, unsigned rows, unsigned cols) {
    int i = 0;
    while (i < n && (rows >> i & 1))
        ++i;
    if (i == n)
        return 1;
    long long det = 0;
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        if (cols >> j & 1)
            continue;
        if (a[i][j] != 0)
            det += sign * a[i][j] * det_masked(a, n, rows | 1u << i, cols | 1u << j);
        sign = -sign;
    }
    return det;
}

struct BinaryNormSq {
    bool singular = false;
    long long num = 0; // Σ cofactor²
    long long den = 1; // det²
};

inline BinaryNormSq binary_inverse_norm_sq(std::uint64_t mask, int n) {
    int a[5][5] = {};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = static_cast<int>(mask >> (i * n + j) & 1);
    BinaryNormSq r;
    const long long det = det_masked(a, n, 0, 0);
    if (det == 0) {
        r.singular = true;
        return r;
    }
    long long sum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const long long minor = det_masked(a, n, 1u << i, 1u << j);
            sum += minor * minor;
        }
    r.num = sum;
    r.den = det * det;
    return r;
}

// strict a < b for a = an/ad, b = bn/bd with positive denominators
inline bool frac_less(long long an, long long ad, long long bn, long long bd) {
    return an * bd < bn * ad;
}

inline void permutations(int n, std::vector<std::array<int, 5>>& out) {
    std::array<int, 5> p{};
    for (int i = 0; i < n; ++i)
        p[i] = i;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n));
}

// Bit-position remap tables for every (row perm, col perm) pair except the
// identity; used to test orbit minimality.
inline std::vector<std::array<std::uint8_t, 25>> permutation_tables(int n) {
    std::vector<std::array<int, 5>> perms;
    permutations(n, perms);
    std::vector<std::array<std::uint8_t, 25>> tables;
    for (const auto& rp : perms)
        for (const auto& cp : perms) {
            std::array<std::uint8_t, 25> t{};
            bool identity = true;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    t[i * n + j] = static_cast<std::uint8_t>(rp[i] * n + cp[j]);
                    identity &= t[i * n + j] == i * n + j;
                }
            if (!identity)
                tables.push_back(t);
        }
    return tables;
}

inline std::uint64_t apply_table(std::uint64_t mask, const std::array<std::uint8_t, 25>& t,
                                 int bits) {
    std::uint64_t out = 0;
    for (int b = 0; b < bits; ++b)
        if (mask >> b & 1)
            out |= 1ULL << t[b];
    return out;
}

} // namespace detail

// Exact minimum of ‖A⁻¹‖²_F over all {0,1}-matrices of order n, 2 ≤ n ≤ 5.
// Iterates bit patterns in increasing order; singular matrices are skipped.
inline SearchResult enumerate_binary(const SearchConfig& config) {
    const int n = config.n;
    if (n < 2)
        throw InvalidArgument("enumerate_binary: order must be at least 2");
    if (n > kEnumerateMaxOrder)
        throw OrderTooLarge("enumerate_binary: order " + std::to_string(n) +
                            " exceeds the enumeration cap of 5");
    if (config.canonical_prune && n > 4)
        throw InvalidArgument("enumerate_binary: canonical pruning is supported for "
                              "n <= 4 (the orbit scan dominates at n = 5)");
    const bool keep_all = n <= 3;
    const std::size_t keep_cap = 8; // prefix kept beyond n = 3
    const int bits = n * n;
    const std::uint64_t total = 1ULL << bits;

    std::vector<std::array<std::uint8_t, 25>> tables;
    if (config.canonical_prune)
        tables = detail::permutation_tables(n);

    struct Batch {
        bool have = false;
        long long num = 0, den = 1;
        std::vector<std::uint64_t> masks;
        long long count = 0;
        long long singular = 0;
        long long examined = 0;
    };
    auto batches = run_blocks<Batch>(total, config.workers, [&](std::uint64_t lo,
                                                                std::uint64_t hi) {
        Batch b;
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (config.canonical_prune) {
                bool minimal = true;
                for (const auto& t : tables)
                    if (detail::apply_table(m, t, bits) < m) {
                        minimal = false;
                        break;
                    }
                if (!minimal)
                    continue;
            }
            ++b.examined; // counts evaluated candidates, not pruned ones
            auto v = detail::binary_inverse_norm_sq(m, n);
            if (v.singular) {
                ++b.singular;
                continue;
            }
            if (!b.have || detail::frac_less(v.num, v.den, b.num, b.den)) {
                b.have = true;
                b.num = v.num;
                b.den = v.den;
                b.masks.clear();
                b.masks.push_back(m);
                b.count = 1;
            } else if (!detail::frac_less(b.num, b.den, v.num, v.den)) {
                ++b.count;
                if (keep_all || b.masks.size() < keep_cap)
                    b.masks.push_back(m);
            }
        }
        return b;
    });

    SearchResult r;
    r.backend = Backend::enumerate;
    r.n = n;
    r.config = config;
    r.bound_sq = lower_bound_sq(n);
    r.exact = true;
    r.pruned = config.canonical_prune;
    bool have = false;
    long long num = 0, den = 1;
    std::vector<std::uint64_t> masks;
    for (auto& b : batches) {
        r.examined += b.examined;
        r.singular += b.singular;
        if (!b.have)
            continue;
        if (!have || detail::frac_less(b.num, b.den, num, den)) {
            have = true;
            num = b.num;
            den = b.den;
            masks = std::move(b.masks);
            r.minimizer_count = b.count;
        } else if (!detail::frac_less(num, den, b.num, b.den)) {
            r.minimizer_count += b.count;
            for (std::uint64_t m : b.masks)
                if (keep_all || masks.size() < keep_cap)
                    masks.push_back(m);
        }
    }
    if (!have)
        throw SingularMatrix("enumerate_binary: no invertible matrix found (bug)");
    r.min_norm_sq = Rational(num, den);
    r.min_norm_sq_float = r.min_norm_sq.to_double();
    for (std::uint64_t m : masks)
        r.minimizers.push_back(mask_to_matrix(m, n));
    const BoundCaseKind kind = classify(n).kind;
    const bool equality = r.min_norm_sq == r.bound_sq;
    r.all_satisfy_bound = !(r.min_norm_sq < r.bound_sq) &&
                          !(kind == BoundCaseKind::even && equality);
    return r;
}

// ---------------------------------------------------------------------------
// Seeded box sampling.

// Draws `count` matrices with independent uniform entries. The float path
// decides clear cases; any margin below kFloatMarginTol is escalated to the
// exact path before counting an equality or a violation.
inline SearchResult sample_box(const SearchConfig& config) {
    const int n = config.n;
    if (n < 2)
        throw InvalidArgument("sample_box: order must be at least 2");
    if (config.count < 1)
        throw InvalidArgument("sample_box: need at least one sample");
    const double bound_f = lower_bound_sq(n).to_double();
    const Rational bound = lower_bound_sq(n);
    const BoundCaseKind kind = classify(n).kind;

    struct Batch {
        long long examined = 0, singular = 0;
        long long escalations = 0, equalities = 0, violations = 0;
        double min = std::numeric_limits<double>::infinity();
        std::uint64_t min_index = 0;
    };
    auto batches = run_blocks<Batch>(
        static_cast<std::uint64_t>(config.count), config.workers,
        [&](std::uint64_t lo, std::uint64_t hi) {
            Batch b;
            for (std::uint64_t i = lo; i < hi; ++i) {
                RngStream rng(config.seed, i);
                FloatMatrix a(n);
                if (config.plant_identity && i == 0) {
                    for (int r2 = 0; r2 < n; ++r2)
                        a(r2, r2) = 1.0;
                } else {
                    for (int r2 = 0; r2 < n; ++r2)
                        for (int c2 = 0; c2 < n; ++c2)
                            a(r2, c2) = rng.next_unit();
                }
                ++b.examined;
                auto ns = inverse_norm_sq_float(a);
                if (!ns) {
                    ++b.singular;
                    continue;
                }
                if (*ns < b.min) {
                    b.min = *ns;
                    b.min_index = i;
                }
                if (*ns - bound_f < kFloatMarginTol) {
                    ++b.escalations;
                    try {
                        Rational norm_sq = frobenius_norm_sq(invert_exact(to_rational(a)));
                        if (norm_sq < bound)
                            ++b.violations;
                        else if (norm_sq == bound) {
                            ++b.equalities;
                            if (kind == BoundCaseKind::even)
                                ++b.violations; // the even bound is strict
                        }
                    } catch (const SingularMatrix&) {
                        ++b.singular;
                    }
                }
            }
            return b;
        });

    SearchResult r;
    r.backend = Backend::sample;
    r.n = n;
    r.config = config;
    r.bound_sq = lower_bound_sq(n);
    r.exact = false;
    for (const auto& b : batches) {
        r.examined += b.examined;
        r.singular += b.singular;
        r.escalations += b.escalations;
        r.equality_candidates += b.equalities;
        r.violations += b.violations;
        if (b.min < r.min_norm_sq_float ||
            (b.min == r.min_norm_sq_float && b.min_index < r.min_index)) {
            r.min_norm_sq_float = b.min;
            r.min_index = b.min_index;
        }
    }
    r.all_satisfy_bound = r.violations == 0;
    return r;
}

// ---------------------------------------------------------------------------
// Projected gradient descent.

// Analytic gradient of h(A) = ‖A⁻¹‖²_F: G = −2·A⁻ᵀ A⁻¹ A⁻ᵀ.
inline FloatMatrix gradient_inv_norm_sq(const FloatMatrix& a) {
    auto inv = invert_float(a);
    if (!inv)
        throw SingularMatrix("gradient_inv_norm_sq: matrix is numerically singular");
    FloatMatrix it = transpose(*inv);
    return scalar_mul(-2.0, matmul(matmul(it, *inv), it));
}

// Central finite differences of h with step `step`; oracle for the gradient.
inline FloatMatrix fd_gradient(const FloatMatrix& a, double step = 1e-5) {
    const int n = a.order();
    FloatMatrix g(n);
    FloatMatrix probe = a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            probe(i, j) = a(i, j) + step;
            auto up = inverse_norm_sq_float(probe);
            probe(i, j) = a(i, j) - step;
            auto down = inverse_norm_sq_float(probe);
            probe(i, j) = a(i, j);
            if (!up || !down)
                throw SingularMatrix("fd_gradient: singular probe point");
            g(i, j) = (*up - *down) / (2.0 * step);
        }
    return g;
}

namespace detail {

inline void clamp_unit_box(FloatMatrix& a) {
    for (double& v : a)
        v = std::clamp(v, 0.0, 1.0);
}

inline double float_norm(const FloatMatrix& a) {
    double s = 0;
    for (double v : a)
        s += v * v;
    return std::sqrt(s);
}

// The gradient formula is derived, not quoted: verify it against finite
// differences once per process before trusting any descent run.
inline void gradient_startup_self_test() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        RngStream rng(0x5E1F7E57ULL, 0);
        FloatMatrix a(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                a(i, j) = (i == j ? 1.0 : 0.0) + 0.3 * rng.next_unit();
        FloatMatrix g = gradient_inv_norm_sq(a);
        FloatMatrix fd = fd_gradient(a);
        double diff = 0, ref = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                diff += (g(i, j) - fd(i, j)) * (g(i, j) - fd(i, j));
                ref += g(i, j) * g(i, j);
            }
        if (!(diff <= 1e-12 * ref))
            throw IdentityViolated("descend: analytic gradient failed the "
                                   "finite-difference self-test");
    });
}

} // namespace detail

// One projected-gradient run from `start`; jitter-restarts on singular
// iterates, Armijo backtracking, stop on projected-gradient norm < 1e−8.
inline DescendRun descend_from(FloatMatrix start, int start_index, bool from_given,
                               std::uint64_t seed, int max_iters) {
    detail::gradient_startup_self_test();
    const int n = start.order();
    RngStream jitter_rng(seed ^ 0x9E3779B97F4A7C15ULL, static_cast<std::uint64_t>(start_index));
    DescendRun run;
    run.start = start_index;
    run.from_given_start = from_given;

    FloatMatrix a = start;
    detail::clamp_unit_box(a);
    auto h_of = [&](const FloatMatrix& m) {
        auto v = inverse_norm_sq_float(m);
        return v ? *v : std::numeric_limits<double>::infinity();
    };
    double h = h_of(a);
    while (!std::isfinite(h)) {
        if (run.restarts >= kMaxRestarts) {
            run.failed_singular = true;
            return run;
        }
        ++run.restarts;
        for (double& v : a)
            v += kJitterRadius * (2.0 * jitter_rng.next_unit() - 1.0);
        detail::clamp_unit_box(a);
        h = h_of(a);
    }

    for (long long it = 0; it < max_iters; ++it) {
        FloatMatrix g(n);
        try {
            g = gradient_inv_norm_sq(a);
        } catch (const SingularMatrix&) {
            if (run.restarts >= kMaxRestarts) {
                run.failed_singular = true;
                run.terminal = h;
                return run;
            }
            ++run.restarts;
            for (double& v : a)
                v += kJitterRadius * (2.0 * jitter_rng.next_unit() - 1.0);
            detail::clamp_unit_box(a);
            h = h_of(a);
            continue;
        }
        run.iters = it + 1;

        FloatMatrix pg = a;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pg(i, j) = a(i, j) - std::clamp(a(i, j) - g(i, j), 0.0, 1.0);
        run.pg_norm = detail::float_norm(pg);
        if (run.pg_norm < kProjGradTol) {
            run.converged = true;
            break;
        }

        double t = 1.0;
        bool stepped = false;
        for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
            FloatMatrix cand = a;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    cand(i, j) = std::clamp(a(i, j) - t * g(i, j), 0.0, 1.0);
            const double hc = h_of(cand);
            if (!std::isfinite(hc))
                continue;
            double dir = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    dir += g(i, j) * (cand(i, j) - a(i, j));
            if (hc <= h + kArmijoC * dir) {
                a = std::move(cand);
                h = hc;
                stepped = true;
                break;
            }
        }
        if (!stepped)
            break; // no admissible step: numerically stationary
    }
    run.terminal = h;
    if (run.pg_norm < kProjGradTol)
        run.converged = true;
    return run;
}

// `starts` independent runs; run 0 starts from `given` when provided, the
// rest from seeded uniform starts.
inline SearchResult descend(const SearchConfig& config,
                            const std::optional<FloatMatrix>& given = std::nullopt) {
    const int n = config.n;
    if (n < 2)
        throw InvalidArgument("descend: order must be at least 2");
    if (config.starts < 1)
        throw InvalidArgument("descend: need at least one start");
    if (given) {
        if (given->order() != n)
            throw DimensionMismatch("descend: start matrix order mismatch");
        for (double v : *given)
            if (!(v >= 0.0 && v <= 1.0))
                throw EntryOutOfBox("descend: start matrix has an entry outside [0,1]");
    }

    auto batches = run_blocks<std::vector<DescendRun>>(
        static_cast<std::uint64_t>(config.starts), config.workers,
        [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<DescendRun> runs;
            for (std::uint64_t s = lo; s < hi; ++s) {
                FloatMatrix start(n);
                bool from_given = false;
                if (s == 0 && given) {
                    start = *given;
                    from_given = true;
                } else {
                    RngStream rng(config.seed, s);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            start(i, j) = rng.next_unit();
                }
                runs.push_back(descend_from(std::move(start), static_cast<int>(s),
                                            from_given, config.seed, config.max_iters));
            }
            return runs;
        });

    SearchResult r;
    r.backend = Backend::descend;
    r.n = n;
    r.config = config;
    r.bound_sq = lower_bound_sq(n);
    r.exact = false;
    const double bound_f = r.bound_sq.to_double();
    for (auto& batch : batches)
        for (auto& run : batch) {
            r.examined += 1;
            if (run.failed_singular)
                r.singular += 1;
            else if (run.terminal < r.min_norm_sq_float)
                r.min_norm_sq_float = run.terminal;
            if (std::isfinite(run.terminal) && run.terminal < bound_f - kDescendTol)
                r.violations += 1;
            r.runs.push_back(std::move(run));
        }
    r.all_satisfy_bound = r.violations == 0;
    return r;
}

} // namespace eil
