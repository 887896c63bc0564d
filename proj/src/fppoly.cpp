#include "hallq/fppoly.hpp"

#include "hallq/errors.hpp"

#include <map>
#include <mutex>

namespace hallq {
namespace fp {

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly add(const Poly& a, const Poly& b, int p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = (uint8_t)(v % p);
    }
    return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b, int p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = (uint8_t)(((v % p) + p) % p);
    }
    return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (uint8_t)((r[i + j] + a[i] * b[j]) % p);
    return trim(std::move(r));
}

static int inv_mod(int a, int p) {
    int t = 0, newt = 1, rr = p, newr = a % p;
    while (newr != 0) {
        int qq = rr / newr;
        int tmp = t - qq * newt;
        t = newt;
        newt = tmp;
        tmp = rr - qq * newr;
        rr = newr;
        newr = tmp;
    }
    return ((t % p) + p) % p;
}

Poly mod(Poly a, const Poly& b, int p) {
    if (b.empty()) throw division_error("fp::mod by zero");
    int db = deg(b);
    int invlead = inv_mod(b.back(), p);
    while (deg(a) >= db) {
        int sh = deg(a) - db;
        int c = (int)(a.back() * invlead % p);
        for (int i = 0; i <= db; ++i) {
            int v = a[sh + i] - c * b[i];
            a[sh + i] = (uint8_t)(((v % p) + p) % p);
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly divexact(const Poly& a, const Poly& b, int p) {
    if (b.empty()) throw division_error("fp::divexact by zero");
    Poly rem = a, quo;
    int db = deg(b);
    if (deg(a) < db) {
        if (!a.empty()) throw error("fp::divexact: not divisible");
        return {};
    }
    quo.assign(a.size() - b.size() + 1, 0);
    int invlead = inv_mod(b.back(), p);
    while (deg(rem) >= db) {
        int sh = deg(rem) - db;
        int c = (int)(rem.back() * invlead % p);
        quo[sh] = (uint8_t)c;
        for (int i = 0; i <= db; ++i) {
            int v = rem[sh + i] - c * b[i];
            rem[sh + i] = (uint8_t)(((v % p) + p) % p);
        }
        rem = trim(std::move(rem));
    }
    if (!rem.empty()) throw error("fp::divexact: not divisible");
    return trim(std::move(quo));
}

Poly monic(Poly f, int p) {
    if (f.empty()) return f;
    int c = inv_mod(f.back(), p);
    for (auto& x : f) x = (uint8_t)(x * c % p);
    return f;
}

Poly gcd(Poly a, Poly b, int p) {
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

Poly powmod_x(long long k, const Poly& f, int p) {
    Poly base = mod(Poly{0, 1}, f, p);
    Poly acc{1};
    while (k) {
        if (k & 1) acc = mod(mul(acc, base, p), f, p);
        base = mod(mul(base, base, p), f, p);
        k >>= 1;
    }
    return acc;
}

bool is_irreducible(const Poly& f, int p) {
    int d = deg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    // x^(p^d) == x mod f, and x^(p^(d/r)) != x for prime r | d
    auto xq = [&](int e) {
        long long k = 1;
        for (int i = 0; i < e; ++i) k *= p;
        return powmod_x(k, f, p);
    };
    Poly x = mod(Poly{0, 1}, f, p);
    if (xq(d) != x) return false;
    for (int r = 2; r <= d; ++r) {
        if (d % r != 0) continue;
        bool r_prime = true;
        for (int s = 2; s * s <= r; ++s)
            if (r % s == 0) r_prime = false;
        if (!r_prime) continue;
        if (xq(d / r) == x) return false;
    }
    return true;
}

std::vector<Poly> monic_irreducibles(int degree, int p) {
    static std::map<std::pair<int, int>, std::vector<Poly>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lk(m);
    auto key = std::make_pair(degree, p);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;

    std::vector<Poly> out;
    Poly f(degree + 1, 0);
    f[degree] = 1;
    // iterate the low `degree` coefficients lexicographically
    std::vector<int> c(degree, 0);
    while (true) {
        for (int i = 0; i < degree; ++i) f[i] = (uint8_t)c[i];
        if (is_irreducible(f, p)) out.push_back(f);
        int i = 0;
        while (i < degree && ++c[i] == p) c[i++] = 0;
        if (i == degree) break;
    }
    cache[key] = out;
    return out;
}

int ord_at(const Poly& f, const Poly& pi, int p) {
    if (f.empty()) throw error("fp::ord_at of zero");
    Poly g = f;
    int n = 0;
    while (true) {
        Poly r = mod(g, pi, p);
        if (!r.empty()) return n;
        g = divexact(g, pi, p);
        ++n;
    }
}

std::string poly_str(const Poly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (int i = deg(f); i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) s += std::to_string((int)f[i]);
        else {
            if (f[i] != 1) s += std::to_string((int)f[i]) + "*";
            s += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

Poly parse_poly(const std::string& s, int p) {
    // accepts sums of  c, t, t^k, c*t^k  separated by '+'
    Poly out;
    size_t i = 0;
    auto fail = [&] { throw parse_error("fp::parse_poly: bad polynomial '" + s + "'"); };
    while (i < s.size()) {
        int coef = 1;
        int pow = 0;
        bool saw_coef = false;
        if (isdigit((unsigned char)s[i])) {
            coef = 0;
            while (i < s.size() && isdigit((unsigned char)s[i])) coef = coef * 10 + (s[i++] - '0');
            saw_coef = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        if (i < s.size() && s[i] == 't') {
            ++i;
            pow = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !isdigit((unsigned char)s[i])) fail();
                pow = 0;
                while (i < s.size() && isdigit((unsigned char)s[i])) pow = pow * 10 + (s[i++] - '0');
            }
        } else if (!saw_coef) {
            fail();
        }
        if ((int)out.size() < pow + 1) out.resize(pow + 1, 0);
        out[pow] = (uint8_t)((out[pow] + coef) % p);
        if (i < s.size()) {
            if (s[i] != '+') fail();
            ++i;
        }
    }
    return trim(std::move(out));
}

} // namespace fp
} // namespace hallq
