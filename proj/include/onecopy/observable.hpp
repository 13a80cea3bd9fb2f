#pragma once

#include <string>
#include <vector>

#include "onecopy/common.hpp"

namespace onecopy {

struct Term {
    std::vector<int> support;  // sorted, distinct qubit indices
    double coeff = 0.0;
};

// Linear combination of products of single-qubit Paulis that are all
// diagonal in one product basis. `basis` holds one axis per qubit from
// {X,Y,Z}; term i is coeff_i * prod_{q in support_i} P_q. Coefficients
// satisfy sum |coeff| = 1 so a single measurement of the full register
// estimates the value.
struct Observable {
    std::string basis;
    std::vector<Term> terms;

    int n() const { return static_cast<int>(basis.size()); }
};

// Throws DomainError on any rule violation: bad axis characters, empty or
// unsorted or out-of-range supports, duplicate supports, zero coefficients,
// or coefficient magnitudes not summing to 1 within tolerance.
void validate_observable(const Observable& o);

// Validates and returns the observable; with renormalize set, rescales the
// coefficients to sum |coeff| = 1 first (rejects an all-zero sum).
Observable make_observable(std::string basis, std::vector<Term> terms,
                           bool renormalize = false);

// max_i |support_i|
int length(const Observable& o);

// max_i #{j : support_i and support_j intersect}, counting j = i
int degree(const Observable& o);

// sum_i coeff_i^2
double observable_norm(const Observable& o);

// (1/n) * sum_q Z_q
Observable mean_z(int n);

}  // namespace onecopy
