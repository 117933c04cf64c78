#pragma once

/**
 * @file closedform.hpp
 * @brief Explicit solution formulas for the fourth-order recurrence.
 *
 * The odd-indexed terms depend only on the seeds (b, d) and the even-indexed
 * terms only on (a, c). With uv the seed product of the pair, the building
 * block is
 *
 *   S_k = A^k + B uv sum_{i=0}^{k-1} A^i alpha^{k-1-i}
 *
 * and, for n >= 1 (empty products are 1):
 *
 *   x_{4n-3} = d alpha^n prod_{p<n-1} S_{2p+2} / prod_{p<n} S_{2p+1}   (pair b,d)
 *   x_{4n-1} = b alpha^n prod_{p<n}   S_{2p+1} / prod_{p<n} S_{2p+2}   (pair b,d)
 *
 * with x_{4n-2}, x_{4n} the same in (c, a). S_k vanishing is exactly the step
 * 2k-1 (pair b,d) or 2k (pair a,c) of the iteration hitting a zero
 * denominator. All evaluators here are exact-mode only and reject inputs whose
 * pair has a vanishing factor at or before the requested index.
 */

#include <optional>
#include <string_view>

#include "ratrec/recurrence.hpp"

namespace ratrec {

enum class Residue { M3, M2, M1, M0 };  // indices 4n-3, 4n-2, 4n-1, 4n
enum class PairSelector { BD, AC };

struct SubsequenceId {
    Residue residue;
    long n;  // >= 1

    friend bool operator==(const SubsequenceId&, const SubsequenceId&) = default;
};

// m >= 1 -> (residue, n) with m in {4n-3, 4n-2, 4n-1, 4n}.
SubsequenceId subsequence_of(long m);
long global_index(SubsequenceId id);
PairSelector pair_of(Residue r);

// A^p (A - alpha + B u v) - B u v alpha^p.
Scalar p_poly(unsigned long p, const Parameters& params, const Scalar& u, const Scalar& v);

Scalar theorem1_term(const Parameters& params, const InitialConditions& init, long m);

// P-polynomial form; throws RequiresANeqAlpha when A = alpha.
Scalar corollary1_term(const Parameters& params, const InitialConditions& init, long m);

// Gamma-ratio form evaluated through rising factorials; throws
// RequiresAEqAlpha when A != alpha and InvalidArgument when B = 0.
Scalar corollary2_term(const Parameters& params, const InitialConditions& init, long m);

// The alpha = A = B = 1 case written with its own products in k*bd, k*ac.
Scalar special_case_elsayed(const InitialConditions& init, long m);

enum class Form { Auto, Theorem1, Corollary1, Corollary2, Elsayed };

std::string_view to_string(Form f);
std::optional<Form> form_from_string(std::string_view s);

struct ClosedFormValue {
    Scalar value;
    Form form;  // the formula actually used; Theorem1 for seeds (m <= 0)
};

// Auto picks corollary2 when A = alpha (and A, B != 0), corollary1 when
// A != alpha, theorem1 otherwise. Seeds are returned for -3 <= m <= 0.
ClosedFormValue evaluate_closed_form(const Parameters& params, const InitialConditions& init, long m,
                                     Form form = Form::Auto);

Scalar closed_form(const Parameters& params, const InitialConditions& init, long m);

// Smallest trajectory index <= horizon at which some S_k of either pair
// vanishes, found from the formula factors alone.
std::optional<long> first_vanishing_factor_index(const Parameters& params, const InitialConditions& init,
                                                 long horizon);

// Produces x_1, x_2, ... from running products of the S_k factors, so a
// sweep over m = 1..N costs O(N) factor multiplications.
class CumulativeClosedForm {
public:
    CumulativeClosedForm(const Parameters& params, const InitialConditions& init);

    long next_index() const { return next_; }
    // Throws ForbiddenInput (with the index) once a factor vanishes.
    Scalar next();

private:
    struct PairState {
        Rational lead_odd;   // seed multiplying the odd-K terms (d or c)
        Rational lead_even;  // seed multiplying the even-K terms (b or a)
        Rational uv;
        Rational geometric;  // sum_{i<K} A^i alpha^{K-1-i}
        Rational a_pow;      // A^K
        Rational odd_product{1};
        Rational even_product{1};
        long k = 0;
    };

    Rational advance(PairState& st, long index);

    Rational alpha_;
    Rational cap_a_;
    Rational cap_b_;
    PairState bd_;
    PairState ac_;
    long next_ = 1;
};

}  // namespace ratrec
