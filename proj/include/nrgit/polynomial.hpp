#pragma once

#include "nrgit/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrgit {

/// Coefficient ring is always Q; a PolyRing is just a fixed, ordered list of
/// variable names. Canonical variable order is declaration order.
struct PolyRing {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    int index_of(const std::string& name) const;
    bool operator==(const PolyRing& other) const { return names == other.names; }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> names);

/// Extend a ring by fresh variables (appended after the existing ones).
RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& fresh);

/// Exponent vector, one slot per ring variable.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);
bool mono_divides(const Monomial& a, const Monomial& b); // a | b
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b); // requires b | a
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

struct MonomialOrder {
    enum class Kind { Lex, GrevLex, Block };
    Kind kind = Kind::GrevLex;
    /// For Block: mask of variables in the eliminated prefix block.
    std::vector<char> eliminated;

    static MonomialOrder lex() { return {Kind::Lex, {}}; }
    static MonomialOrder grevlex() { return {Kind::GrevLex, {}}; }
    static MonomialOrder block(std::vector<char> mask) { return {Kind::Block, std::move(mask)}; }

    /// Strict total order: true iff a < b.
    bool less(const Monomial& a, const Monomial& b) const;

    std::string key() const; // cache key
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariant: no stored coefficient is zero; equality is term-map equality.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
    static Polynomial constant(const RingPtr& ring, const Rational& c);
    static Polynomial variable(const RingPtr& ring, std::size_t index);
    static Polynomial monomial(const RingPtr& ring, Monomial m, const Rational& c);

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::optional<Rational> as_constant() const; // nullopt unless constant (0 ok)

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned n) const;

    int total_degree() const; // -1 for zero

    /// Leading monomial/coefficient with respect to an order; throws on zero.
    const Monomial& leading_monomial(const MonomialOrder& ord) const;
    const Rational& leading_coefficient(const MonomialOrder& ord) const;

    Polynomial derivative(std::size_t var) const;
    Rational evaluate(const std::vector<Rational>& point) const;

    /// Map into another ring along variable indices: var i here becomes
    /// var_map[i] there. Every variable with a nonzero exponent must map.
    Polynomial map_to(const RingPtr& target, const std::vector<int>& var_map) const;

    /// Substitute target polynomials for each variable.
    Polynomial substitute(const RingPtr& target, const std::vector<Polynomial>& images) const;

    /// Canonical human-readable form ("3/2*x^2*y - e"); deterministic term
    /// order (total degree, then lex, descending). Round-trips via parse.
    std::string str() const;

    static Polynomial parse(const RingPtr& ring, const std::string& text);

private:
    RingPtr ring_;
    std::map<Monomial, Rational> terms_;
    void check_ring(const Polynomial& o) const;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nrgit
