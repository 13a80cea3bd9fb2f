#include "onecopy/observable.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace onecopy {

namespace {

bool supports_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    // both sorted
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return false;
}

}  // namespace

void validate_observable(const Observable& o) {
    const int n = o.n();
    if (n < 1) throw DomainError("observable basis is empty");
    for (char axis : o.basis)
        if (axis != 'X' && axis != 'Y' && axis != 'Z')
            throw DomainError("basis axes must come from {X, Y, Z}");
    if (o.terms.empty()) throw DomainError("observable has no terms");

    std::set<std::vector<int>> seen;
    double abs_sum = 0.0;
    for (const Term& t : o.terms) {
        if (t.support.empty()) throw DomainError("term support is empty");
        if (!std::is_sorted(t.support.begin(), t.support.end()) ||
            std::adjacent_find(t.support.begin(), t.support.end()) !=
                t.support.end())
            throw DomainError("term support must be sorted and distinct");
        if (t.support.front() < 0 || t.support.back() >= n)
            throw DomainError("term support index out of range");
        if (!seen.insert(t.support).second)
            throw DomainError("two terms share the same support");
        if (t.coeff == 0.0) throw DomainError("term coefficient is zero");
        abs_sum += std::abs(t.coeff);
    }
    if (std::abs(abs_sum - 1.0) > tol::coeff_sum)
        throw DomainError("coefficient magnitudes sum to " +
                          std::to_string(abs_sum) + ", expected 1");
}

Observable make_observable(std::string basis, std::vector<Term> terms,
                           bool renormalize) {
    Observable o{std::move(basis), std::move(terms)};
    if (renormalize) {
        double abs_sum = 0.0;
        for (const Term& t : o.terms) abs_sum += std::abs(t.coeff);
        if (abs_sum <= 0.0)
            throw DomainError("cannot renormalize zero coefficients");
        for (Term& t : o.terms) t.coeff /= abs_sum;
    }
    validate_observable(o);
    return o;
}

int length(const Observable& o) {
    std::size_t best = 0;
    for (const Term& t : o.terms) best = std::max(best, t.support.size());
    return static_cast<int>(best);
}

int degree(const Observable& o) {
    int best = 0;
    for (const Term& a : o.terms) {
        int d = 0;
        for (const Term& b : o.terms)
            if (supports_intersect(a.support, b.support)) ++d;
        best = std::max(best, d);
    }
    return best;
}

double observable_norm(const Observable& o) {
    double s = 0.0;
    for (const Term& t : o.terms) s += t.coeff * t.coeff;
    return s;
}

Observable mean_z(int n) {
    if (n < 1) throw DomainError("mean_z needs at least one qubit");
    std::vector<Term> terms;
    terms.reserve(n);
    for (int q = 0; q < n; ++q) terms.push_back({{q}, 1.0 / n});
    return make_observable(std::string(n, 'Z'), std::move(terms));
}

}  // namespace onecopy
