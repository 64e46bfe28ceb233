#include "divfano/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace divfano
{

namespace
{

std::vector<std::pair<Int, int>> factorize(Int q)
{
    std::vector<std::pair<Int, int>> f;
    for (Int p = 2; p * p <= q; ++p) {
        if (q % p != 0)
            continue;
        int e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (q > 1)
        f.emplace_back(q, 1);
    return f;
}

/// Divisors of q^2 below q, ascending.
std::vector<Int> divisors_of_square_below(Int q)
{
    std::vector<Int> divs{1};
    for (auto [p, e] : factorize(q)) {
        const std::size_t base = divs.size();
        Int pk = 1;
        for (int k = 1; k <= 2 * e; ++k) {
            pk = detail::narrow(static_cast<__int128>(pk) * p);
            for (std::size_t s = 0; s < base; ++s) {
                const __int128 v = static_cast<__int128>(divs[s]) * pk;
                if (v < q)
                    divs.push_back(static_cast<Int>(v));
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::remove_if(divs.begin(), divs.end(), [q](Int t) { return t >= q; }), divs.end());
    return divs;
}

bool passes_filters(const WeightSystem &ws, const EnumerationQuery &q)
{
    if (!ws.divisible() || ws.index() != q.index)
        return false;
    if (q.exclude_linear_cone
        && std::find(ws.weights().begin(), ws.weights().end(), ws.degree()) != ws.weights().end())
        return false;
    if (q.require_well_formed && !is_well_formed(ws.weights()))
        return false;
    return true;
}

/// Index-1 search in quotient space. With b_0 <= ... <= b_n ascending, a
/// partial sum S of the first k reciprocals must stay <= 1 (every later
/// term is >= 1/d, and they sum to 1 - S + 1/d), with S = 1 only right
/// before the last term. The final term solves 1/b - 1/d = 1 - S by a
/// divisor search.
class EgyptianSearch
{
public:
    EgyptianSearch(const EnumerationQuery &q) : query_{q} {}

    std::set<WeightSystem> run()
    {
        rec(Rational{0});
        return std::move(found_);
    }

private:
    void rec(const Rational &partial)
    {
        const Int remaining = query_.num_weights - static_cast<Int>(b_.size());
        const Int prev = b_.empty() ? 2 : b_.back();
        if (remaining == 1) {
            finish(partial, prev);
            return;
        }
        const Rational rest = Rational{1} - partial;
        // smallest b with 1/b <= rest
        const Int lo = std::max(prev, (rest.den() + rest.num() - 1) / rest.num());
        for (Int b = lo;; ++b) {
            // stop once remaining/b <= rest: the tail can no longer exceed 1 - S
            if (static_cast<__int128>(remaining) * rest.den() <= static_cast<__int128>(rest.num()) * b)
                break;
            const Rational next = partial + Rational{1, b};
            if (next == Rational{1} && remaining > 2)
                continue;
            b_.push_back(b);
            rec(next);
            b_.pop_back();
        }
    }

    void finish(const Rational &partial, Int prev)
    {
        if (partial == Rational{1}) {
            // last b equals d; well-formedness forces d = lcm of the rest
            Int l = 1;
            for (Int b : b_)
                l = std::lcm(l, b);
            emit(l, l);
            return;
        }
        const Rational rest = Rational{1} - partial;
        const Int p = rest.num(), q = rest.den();
        // 1/b - 1/d = p/q  <=>  b = (q - t)/p, d = q(q - t)/(p t) with t | q^2
        for (Int t : divisors_of_square_below(q)) {
            if ((q - t) % p != 0)
                continue;
            const Int b = (q - t) / p;
            if (b < prev)
                continue;
            const __int128 num = static_cast<__int128>(q) * (q - t);
            const __int128 den = static_cast<__int128>(p) * t;
            if (num % den != 0)
                continue;
            emit(b, detail::narrow(num / den));
        }
    }

    void emit(Int last_b, Int d)
    {
        if (d % last_b != 0)
            return;
        std::vector<Int> weights;
        weights.reserve(b_.size() + 1);
        for (Int b : b_) {
            if (d % b != 0)
                return;
            weights.push_back(d / b);
        }
        weights.push_back(d / last_b);
        WeightSystem ws{std::move(weights), d};
        if (passes_filters(ws, query_) && (!query_.d_max || d <= *query_.d_max))
            found_.insert(std::move(ws));
    }

    const EnumerationQuery &query_;
    std::vector<Int> b_;
    std::set<WeightSystem> found_;
};

/// Degree-bounded search: for each d <= d_max choose a multiset of divisors
/// of d summing to d + index.
class DivisorSearch
{
public:
    DivisorSearch(const EnumerationQuery &q) : query_{q} {}

    std::set<WeightSystem> run()
    {
        for (Int d = 1; d <= *query_.d_max; ++d) {
            divisors_.clear();
            for (Int a = 1; a <= d; ++a)
                if (d % a == 0 && (a < d || !query_.exclude_linear_cone))
                    divisors_.push_back(a);
            d_ = d;
            rec(0, query_.num_weights, d + query_.index);
        }
        return std::move(found_);
    }

private:
    void rec(std::size_t from, Int slots, Int sum)
    {
        if (slots == 0) {
            if (sum == 0) {
                WeightSystem ws{chosen_, d_};
                if (passes_filters(ws, query_))
                    found_.insert(std::move(ws));
            }
            return;
        }
        for (std::size_t k = from; k < divisors_.size(); ++k) {
            const Int a = divisors_[k];
            if (a * slots > sum)
                break;
            if (divisors_.back() * slots < sum)
                return;
            chosen_.push_back(a);
            rec(k, slots - 1, sum - a);
            chosen_.pop_back();
        }
    }

    const EnumerationQuery &query_;
    Int d_ = 0;
    std::vector<Int> divisors_;
    std::vector<Int> chosen_;
    std::set<WeightSystem> found_;
};

} // namespace

EnumerationResult enumerate(const EnumerationQuery &query)
{
    if (query.num_weights < 3)
        throw validation_error("enumeration needs at least 3 weights (dimension >= 1)");
    if (query.index <= 0)
        throw validation_error("Fano index must be positive");
    if (query.d_max && *query.d_max <= 0)
        throw validation_error("d_max must be positive");

    const bool unbounded_ok = query.index == 1 && query.require_well_formed;
    if (!unbounded_ok && !query.d_max)
        throw validation_error(
            query.index != 1
                ? "index > 1 needs an explicit d_max: the search is only bounded for index 1"
                : "without the well-formedness filter the index-1 search is infinite; pass d_max");

    EnumerationResult result;
    result.query = query;
    std::set<WeightSystem> found = unbounded_ok ? EgyptianSearch{query}.run() : DivisorSearch{query}.run();
    result.systems.assign(found.begin(), found.end());
    result.complete = unbounded_ok && !query.d_max;
    return result;
}

EnumerationResult enumerate_bruteforce(int num_weights, Int index, Int a_max)
{
    if (num_weights < 3)
        throw validation_error("enumeration needs at least 3 weights");
    EnumerationResult result;
    result.query.num_weights = num_weights;
    result.query.index = index;

    std::vector<Int> w(static_cast<std::size_t>(num_weights), 1);
    // odometer over non-decreasing tuples in [1, a_max]
    while (true) {
        const Int sum = std::accumulate(w.begin(), w.end(), Int{0});
        const Int d = sum - index;
        if (d > 0) {
            bool ok = true;
            for (Int a : w)
                if (d % a != 0 || a == d) {
                    ok = false;
                    break;
                }
            if (ok && is_well_formed(w))
                result.systems.emplace_back(w, d);
        }
        int k = num_weights - 1;
        while (k >= 0 && w[static_cast<std::size_t>(k)] == a_max)
            --k;
        if (k < 0)
            break;
        const Int v = ++w[static_cast<std::size_t>(k)];
        for (auto j = static_cast<std::size_t>(k) + 1; j < w.size(); ++j)
            w[j] = v;
    }
    std::sort(result.systems.begin(), result.systems.end());
    result.systems.erase(std::unique(result.systems.begin(), result.systems.end()), result.systems.end());
    result.complete = false;
    return result;
}

} // namespace divfano
