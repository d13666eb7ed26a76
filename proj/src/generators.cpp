#include "mts/generators.hpp"

namespace mts {

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Ordinal random_ordinal(Rng& rng, int depth) {
    Ordinal out;
    int terms = pick(rng, 0, 3);
    Ordinal exp = depth > 0 ? random_ordinal(rng, depth - 1) : Ordinal::nat(pick(rng, 0, 2));
    for (int t = 0; t < terms; ++t) {
        auto coef = static_cast<std::uint64_t>(pick(rng, 1, 3));
        out = ord_add(out, ord_mul(ord_omega_pow(exp), Ordinal::nat(coef)));
        if (exp.is_zero()) break;
        exp = depth > 0 && pick(rng, 0, 1) ? random_ordinal(rng, depth - 1) : Ordinal::nat(pick(rng, 0, 1));
    }
    return out;
}

Family random_family(Rng& rng, int depth) {
    int k = pick(rng, 0, depth > 0 ? 10 : 5);
    switch (k) {
        case 0: return Family::s0();
        case 1: return Family::a(static_cast<std::uint32_t>(pick(rng, 1, 5)));
        case 2:
        case 3: {
            Ordinal a = random_ordinal(rng, 1);
            auto v = pick(rng, 0, 3) == 0 ? LimitVariant::Card : LimitVariant::Min;
            return Family::schreier(a, GrowthFn::identity(), v);
        }
        case 4: {
            Ordinal b = ord_add(random_ordinal(rng, 1), Ordinal::nat(1));
            return Family::r(b);
        }
        case 5: {
            std::vector<FinSet> gens;
            for (int g = pick(rng, 1, 2); g > 0; --g) {
                FinSet s = random_finset(rng, 1, 6, 0.4);
                if (s.empty()) s = {1};
                gens.push_back(s);
            }
            return Family::hull(gens);
        }
        case 6:
        case 7: return Family::bracket(random_family(rng, depth - 1), random_family(rng, depth - 1));
        case 8: return Family::concat({random_family(rng, depth - 1), random_family(rng, depth - 1)});
        case 9: return Family::union_of({random_family(rng, depth - 1), random_family(rng, depth - 1)});
        default:
            return Family::tail(random_family(rng, depth - 1), static_cast<std::uint32_t>(pick(rng, 1, 4)));
    }
}

SparseVector random_vector(Rng& rng, std::uint32_t lo, std::uint32_t hi, double density, int c) {
    std::bernoulli_distribution keep(density);
    SparseVector x;
    for (std::uint32_t i = lo; i <= hi; ++i) {
        if (!keep(rng)) continue;
        int num = pick(rng, -c, c);
        if (num == 0) num = 1;
        Rational q(num, pick(rng, 1, 3));
        q.canonicalize();
        x.set(i, q);
    }
    if (x.empty()) x.set(static_cast<std::uint32_t>(pick(rng, static_cast<int>(lo), static_cast<int>(hi))), 1);
    return x;
}

FinSet random_finset(Rng& rng, std::uint32_t lo, std::uint32_t hi, double density) {
    std::bernoulli_distribution keep(density);
    FinSet s;
    for (std::uint32_t i = lo; i <= hi; ++i)
        if (keep(rng)) s.push_back(i);
    return s;
}

}  // namespace mts
