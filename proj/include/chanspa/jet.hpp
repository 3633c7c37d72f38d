#pragma once

/**
 * @file jet.hpp
 * @brief Truncated Taylor arithmetic for forward-mode higher-order derivatives.
 *
 * A Jet<T, N> holds the normalized Taylor coefficients c_k = f^(k)(x0) / k!
 * of a function of one real variable, truncated after order N. Arithmetic
 * and the elementary functions below propagate all N+1 coefficients exactly
 * (up to rounding), so the k-th derivative of any composite expression is
 * recovered as k! * c_k without finite differencing.
 *
 * The scalar type may be real or std::complex; a real variable seeded into a
 * complex jet differentiates complex-valued expressions of a real argument.
 *
 * @code
 * auto z = Jet<double, 3>::variable(2.0);
 * auto f = exp(-z) * z;
 * double third = f.derivative(3);
 * @endcode
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>

namespace chanspa
{
template<class T, std::size_t N>
class Jet
{
  public:
    using value_type = T;
    static constexpr std::size_t order = N;

    constexpr Jet() : c_{} {}
    constexpr Jet(T constant) : c_{} { c_[0] = constant; }

    template<class U>
        requires(!std::is_same_v<U, T> && std::is_convertible_v<U, T>)
    explicit constexpr Jet(const Jet<U, N>& other) : c_{}
    {
        for (std::size_t k = 0; k <= N; ++k)
            c_[k] = T(other[k]);
    }

    //! Independent variable x0 + h: value x0, unit first coefficient.
    static constexpr Jet variable(T x0)
    {
        Jet j(x0);
        if constexpr (N >= 1)
            j.c_[1] = T(1);
        return j;
    }

    constexpr T& operator[](std::size_t k) { return c_[k]; }
    constexpr const T& operator[](std::size_t k) const { return c_[k]; }

    constexpr T value() const { return c_[0]; }

    //! k-th derivative at the expansion point.
    constexpr T derivative(std::size_t k) const
    {
        double fact = 1;
        for (std::size_t i = 2; i <= k; ++i)
            fact *= static_cast<double>(i);
        return c_[k] * fact;
    }

    constexpr Jet operator-() const
    {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k)
            r.c_[k] = -c_[k];
        return r;
    }

    constexpr Jet& operator+=(const Jet& o)
    {
        for (std::size_t k = 0; k <= N; ++k)
            c_[k] += o.c_[k];
        return *this;
    }
    constexpr Jet& operator-=(const Jet& o)
    {
        for (std::size_t k = 0; k <= N; ++k)
            c_[k] -= o.c_[k];
        return *this;
    }
    constexpr Jet& operator*=(const Jet& o) { return *this = *this * o; }
    constexpr Jet& operator/=(const Jet& o) { return *this = *this / o; }

    constexpr Jet& operator+=(T s)
    {
        c_[0] += s;
        return *this;
    }
    constexpr Jet& operator-=(T s)
    {
        c_[0] -= s;
        return *this;
    }
    constexpr Jet& operator*=(T s)
    {
        for (auto& v : c_)
            v *= s;
        return *this;
    }
    constexpr Jet& operator/=(T s)
    {
        for (auto& v : c_)
            v /= s;
        return *this;
    }

    friend constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend constexpr Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k)
        {
            T acc{};
            for (std::size_t j = 0; j <= k; ++j)
                acc += a.c_[j] * b.c_[k - j];
            r.c_[k] = acc;
        }
        return r;
    }

    friend constexpr Jet operator/(const Jet& a, const Jet& b)
    {
        // q * b = a, solved order by order
        Jet q;
        for (std::size_t k = 0; k <= N; ++k)
        {
            T acc = a.c_[k];
            for (std::size_t j = 1; j <= k; ++j)
                acc -= b.c_[j] * q.c_[k - j];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

    friend constexpr Jet operator+(Jet a, T s) { return a += s; }
    friend constexpr Jet operator+(T s, Jet a) { return a += s; }
    friend constexpr Jet operator-(Jet a, T s) { return a -= s; }
    friend constexpr Jet operator-(T s, const Jet& a) { return (-a) += s; }
    friend constexpr Jet operator*(Jet a, T s) { return a *= s; }
    friend constexpr Jet operator*(T s, Jet a) { return a *= s; }
    friend constexpr Jet operator/(Jet a, T s) { return a /= s; }
    friend constexpr Jet operator/(T s, const Jet& a) { return Jet(s) / a; }

    friend Jet exp(const Jet& a)
    {
        // r' = r a'  =>  k r_k = sum_{j=1..k} j a_j r_{k-j}
        Jet r;
        using std::exp;
        r.c_[0] = exp(a.c_[0]);
        for (std::size_t k = 1; k <= N; ++k)
        {
            T acc{};
            for (std::size_t j = 1; j <= k; ++j)
                acc += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
            r.c_[k] = acc / static_cast<double>(k);
        }
        return r;
    }

    friend Jet sqrt(const Jet& a)
    {
        // r * r = a
        Jet r;
        using std::sqrt;
        r.c_[0] = sqrt(a.c_[0]);
        for (std::size_t k = 1; k <= N; ++k)
        {
            T acc = a.c_[k];
            for (std::size_t j = 1; j < k; ++j)
                acc -= r.c_[j] * r.c_[k - j];
            r.c_[k] = acc / (2.0 * r.c_[0]);
        }
        return r;
    }

    //! Integer power by repeated squaring; negative powers via reciprocal.
    friend Jet pow(const Jet& a, int n)
    {
        if (n < 0)
            return T(1) / pow(a, -n);
        Jet result(T(1));
        Jet base = a;
        while (n)
        {
            if (n & 1)
                result = result * base;
            base = base * base;
            n >>= 1;
        }
        return result;
    }

  private:
    std::array<T, N + 1> c_;
};

//! Promote a real jet to a complex one.
template<std::size_t N>
Jet<std::complex<double>, N> to_complex(const Jet<double, N>& j)
{
    return Jet<std::complex<double>, N>(j);
}
} // namespace chanspa
