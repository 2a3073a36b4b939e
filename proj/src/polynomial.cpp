#include "nrgit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nrgit {

int PolyRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

RingPtr make_ring(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw std::invalid_argument("duplicate variable name: " + names[i]);
    auto r = std::make_shared<PolyRing>();
    r->names = std::move(names);
    return r;
}

RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& fresh) {
    std::vector<std::string> names = ring->names;
    names.insert(names.end(), fresh.begin(), fresh.end());
    return make_ring(std::move(names));
}

int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0) throw std::logic_error("mono_div: not divisible");
    }
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

namespace {

// a < b in lex (first nonzero difference decides).
bool lex_less(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// a < b in graded reverse lex.
bool grevlex_less(const Monomial& a, const Monomial& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

bool grevlex_less_masked(const Monomial& a, const Monomial& b, const std::vector<char>& mask,
                         bool in_block) {
    int da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool sel = (mask[i] != 0) == in_block;
        if (sel) {
            da += a[i];
            db += b[i];
        }
    }
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;) {
        bool sel = (mask[i] != 0) == in_block;
        if (sel && a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

bool masked_equal(const Monomial& a, const Monomial& b, const std::vector<char>& mask,
                  bool in_block) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (((mask[i] != 0) == in_block) && a[i] != b[i]) return false;
    return true;
}

} // namespace

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
    switch (kind) {
    case Kind::Lex:
        return lex_less(a, b);
    case Kind::GrevLex:
        return grevlex_less(a, b);
    case Kind::Block:
        if (!masked_equal(a, b, eliminated, true))
            return grevlex_less_masked(a, b, eliminated, true);
        return grevlex_less_masked(a, b, eliminated, false);
    }
    return false;
}

std::string MonomialOrder::key() const {
    std::string k;
    switch (kind) {
    case Kind::Lex: k = "lex"; break;
    case Kind::GrevLex: k = "grevlex"; break;
    case Kind::Block:
        k = "block:";
        for (char c : eliminated) k += c ? '1' : '0';
        break;
    }
    return k;
}

Polynomial Polynomial::constant(const RingPtr& ring, const Rational& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_[Monomial(ring->size(), 0)] = c;
    return p;
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t index) {
    if (index >= ring->size()) throw std::out_of_range("variable index");
    Monomial m(ring->size(), 0);
    m[index] = 1;
    Polynomial p(ring);
    p.terms_[m] = 1;
    return p;
}

Polynomial Polynomial::monomial(const RingPtr& ring, Monomial m, const Rational& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_[std::move(m)] = c;
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && nrgit::total_degree(terms_.begin()->first) == 0);
}

std::optional<Rational> Polynomial::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::check_ring(const Polynomial& o) const {
    if (ring_ && o.ring_ && !(*ring_ == *o.ring_))
        throw std::logic_error("polynomial ring mismatch");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_ring(o);
    Polynomial r(ring_ ? ring_ : o.ring_);
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    for (auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = Polynomial::constant(ring_, 1);
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1u;
    }
    return r;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, nrgit::total_degree(m));
    return d;
}

const Monomial& Polynomial::leading_monomial(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    const Monomial* best = nullptr;
    for (auto& [m, c] : terms_)
        if (!best || ord.less(*best, m)) best = &m;
    return *best;
}

const Rational& Polynomial::leading_coefficient(const MonomialOrder& ord) const {
    return terms_.at(leading_monomial(ord));
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r(ring_);
    for (auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial n = m;
        n[var] -= 1;
        r.add_term(n, c * m[var]);
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != ring_->size()) throw std::invalid_argument("point dimension mismatch");
    Rational total = 0;
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (int e = 0; e < m[i]; ++e) t *= point[i];
        }
        total += t;
    }
    return total;
}

Polynomial Polynomial::map_to(const RingPtr& target, const std::vector<int>& var_map) const {
    Polynomial r(target);
    for (auto& [m, c] : terms_) {
        Monomial n(target->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (var_map[i] < 0) throw std::logic_error("map_to: unmapped variable in support");
            n[static_cast<std::size_t>(var_map[i])] += m[i];
        }
        r.add_term(n, c);
    }
    return r;
}

Polynomial Polynomial::substitute(const RingPtr& target,
                                  const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->size()) throw std::invalid_argument("one image per variable");
    Polynomial r(target);
    for (auto& [m, c] : terms_) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t = t * images[i].pow(static_cast<unsigned>(m[i]));
        r += t;
    }
    return r;
}

namespace {

// Deterministic print order: total degree desc, then lex desc.
bool print_before(const Monomial& a, const Monomial& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return !lex_less(a, b) && a != b;
}

} // namespace

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Monomial, Rational>*> ordered;
    ordered.reserve(terms_.size());
    for (auto& t : terms_) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(),
              [](auto* a, auto* b) { return print_before(a->first, b->first); });

    std::ostringstream out;
    bool first = true;
    for (auto* t : ordered) {
        const Monomial& m = t->first;
        Rational c = t->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;

        std::vector<std::string> factors;
        if (c != 1 || nrgit::total_degree(m) == 0) factors.push_back(c.get_str());
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (m[i] == 1)
                factors.push_back(ring_->names[i]);
            else
                factors.push_back(ring_->names[i] + "^" + std::to_string(m[i]));
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) out << "*";
            out << factors[i];
        }
    }
    return out.str();
}

namespace {

struct Parser {
    const RingPtr& ring;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("polynomial parse error at position " + std::to_string(pos) + ": " +
                         msg + " in \"" + s + "\"");
    }

    std::string read_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return s.substr(start, pos - start);
    }

    std::string read_identifier() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size() ||
            !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            fail("expected identifier");
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    // factor: integer [/ integer] | var [^ integer]
    Polynomial parse_factor() {
        skip_ws();
        if (pos >= s.size()) fail("expected factor");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_integer();
            Rational q(num);
            if (eat('/')) {
                std::string den = read_integer();
                q = Rational(num + "/" + den);
            }
            q.canonicalize();
            return Polynomial::constant(ring, q);
        }
        std::string name = read_identifier();
        int idx = ring->index_of(name);
        if (idx < 0) fail("unknown variable '" + name + "'");
        int exp = 1;
        if (eat('^')) exp = std::stoi(read_integer());
        Monomial m(ring->size(), 0);
        m[static_cast<std::size_t>(idx)] = exp;
        return Polynomial::monomial(ring, m, 1);
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (eat('*')) p = p * parse_factor();
        return p;
    }

    Polynomial parse_poly() {
        Polynomial total(ring);
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else eat('+');
        while (true) {
            Polynomial t = parse_term();
            total += neg ? -t : t;
            skip_ws();
            if (eat('-')) {
                neg = true;
            } else if (eat('+')) {
                neg = false;
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return total;
    }
};

} // namespace

Polynomial Polynomial::parse(const RingPtr& ring, const std::string& text) {
    Parser p{ring, text};
    return p.parse_poly();
}

} // namespace nrgit
