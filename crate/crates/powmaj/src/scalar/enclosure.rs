//! Interval enclosures with exact rational endpoints.
//!
//! Every irrational primitive (q-th roots, natural log) rounds outward onto a
//! dyadic grid, so an `Enclosure` always contains the true value and only the
//! primitives introduce width; sums, products and quotients of endpoints stay
//! exact. Refining the grid (more bits) never moves an endpoint across the
//! true value, which is what makes adaptive comparison sound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{dyadic_round, rational_pow_int, Rational, RoundDir};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
    bits: u32,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational, bits: u32) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure");
        Enclosure { lo, hi, bits }
    }

    /// Degenerate interval for an exactly known value.
    pub fn point(value: Rational, bits: u32) -> Self {
        Enclosure { lo: value.clone(), hi: value, bits }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_sign_definite(&self) -> bool {
        self.is_strictly_positive() || self.is_strictly_negative()
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &other.lo, &self.hi + &other.hi, self.bits.min(other.bits))
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &other.hi, &self.hi - &other.lo, self.bits.min(other.bits))
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(-self.hi.clone(), -self.lo.clone(), self.bits)
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Enclosure::new(lo, hi, self.bits.min(other.bits))
    }

    /// Interval division. The divisor must not straddle zero; callers refine
    /// the divisor until its sign is certain before dividing.
    pub fn div(&self, other: &Enclosure) -> Enclosure {
        assert!(other.is_sign_definite(), "division by an enclosure straddling zero");
        let candidates = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Enclosure::new(lo, hi, self.bits.min(other.bits))
    }

    /// `max(u - t, 0)` applied interval-wise: the positive-part hinge used by
    /// convex witnesses. Sound without deciding where the interval sits
    /// relative to zero.
    pub fn positive_part(&self) -> Enclosure {
        let zero = Rational::zero();
        let lo = if self.lo < zero { zero.clone() } else { self.lo.clone() };
        let hi = if self.hi < zero { zero } else { self.hi.clone() };
        Enclosure::new(lo, hi, self.bits)
    }

    /// Integer power; negative exponents require a sign-definite interval.
    pub fn pow_int(&self, k: i64) -> Enclosure {
        if k == 0 {
            return Enclosure::point(Rational::one(), self.bits);
        }
        if k < 0 {
            assert!(self.is_sign_definite(), "negative power of an enclosure straddling zero");
            let a = rational_pow_int(&self.lo, k);
            let b = rational_pow_int(&self.hi, k);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            return Enclosure::new(lo, hi, self.bits);
        }
        let a = rational_pow_int(&self.lo, k);
        let b = rational_pow_int(&self.hi, k);
        if k % 2 == 1 || self.lo >= Rational::zero() {
            return Enclosure::new(a, b, self.bits);
        }
        if self.hi <= Rational::zero() {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            return Enclosure::new(lo, hi, self.bits);
        }
        // Even power of a zero-straddling interval.
        Enclosure::new(Rational::zero(), a.max(b), self.bits)
    }

    /// Rational power `s/q` of a strictly positive enclosure, rounding the
    /// endpoints outward onto the `2^-bits` grid when `q > 1`.
    pub fn pow_rational(&self, s: i64, q: u32, bits: u32) -> Enclosure {
        assert!(self.is_strictly_positive(), "rational power of a nonpositive enclosure");
        if q == 1 {
            return self.pow_int(s);
        }
        let increasing = s > 0;
        let (at_lo, at_hi) = (&self.lo, &self.hi);
        let (src_lo, src_hi) = if increasing { (at_lo, at_hi) } else { (at_hi, at_lo) };
        let lo = pow_dir(src_lo, s, q, bits, RoundDir::Down);
        let hi = pow_dir(src_hi, s, q, bits, RoundDir::Up);
        Enclosure::new(lo, hi, bits.min(self.bits))
    }

    /// Shrinks endpoints onto the `2^-bits` grid, outward, to keep their
    /// representations small after long exact chains.
    pub fn round_outward(&self, bits: u32) -> Enclosure {
        Enclosure::new(
            dyadic_round(&self.lo, bits, RoundDir::Down),
            dyadic_round(&self.hi, bits, RoundDir::Up),
            self.bits.min(bits),
        )
    }
}

/// Floor and ceiling of `t^(1/q)` on the `2^-bits` grid for rational `t > 0`,
/// collapsing to an exact point when the root is a grid rational. Uses the
/// identity floor(t^(1/q) * 2^bits) = floor(floor(t * 2^(bits*q))^(1/q)).
pub fn root_bounds(t: &Rational, q: u32, bits: u32) -> (Rational, Rational) {
    assert!(t.is_positive(), "root of a nonpositive rational");
    assert!(q >= 1);
    let shifted_numer = t.numer().magnitude() << (bits as usize * q as usize);
    let (quotient, remainder) = shifted_numer.div_rem(t.denom().magnitude());
    let root = quotient.nth_root(q);
    let exact = remainder.is_zero() && root.pow(q) == quotient;
    let denom = BigInt::one() << bits as usize;
    let lo = Rational::new(BigInt::from(root.clone()), denom.clone());
    if exact {
        return (lo.clone(), lo);
    }
    let hi = Rational::new(BigInt::from(root + 1u8), denom);
    (lo, hi)
}

/// Directed rounding of `x^(s/q)` for `x > 0`, `q >= 2`.
pub fn pow_dir(x: &Rational, s: i64, q: u32, bits: u32, dir: RoundDir) -> Rational {
    debug_assert!(x.is_positive());
    let t = rational_pow_int(x, s);
    let (lo, hi) = root_bounds(&t, q, bits);
    match dir {
        RoundDir::Down => lo,
        RoundDir::Up => hi,
    }
}

/// Exact `x^(1/q)` when it exists in the rationals (perfect-power detection).
pub fn exact_root(x: &Rational, q: u32) -> Option<Rational> {
    if !x.is_positive() {
        return None;
    }
    let rn = x.numer().magnitude().nth_root(q);
    if rn.pow(q) != *x.numer().magnitude() {
        return None;
    }
    let rd = x.denom().magnitude().nth_root(q);
    if rd.pow(q) != *x.denom().magnitude() {
        return None;
    }
    Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
}

/// Certified natural logarithm of a positive rational, with width at most
/// a few ulps of the `2^-bits` grid. Range-reduces by powers of two and sums
/// the atanh series 2*sum z^(2j+1)/(2j+1) with an exact tail bound.
pub fn ln_enclosure(x: &Rational, bits: u32) -> Enclosure {
    assert!(x.is_positive(), "logarithm of a nonpositive rational");
    if x.is_one() {
        return Enclosure::point(Rational::zero(), bits);
    }
    let mut m = x.clone();
    let mut k: i64 = 0;
    let three_halves = Rational::new(BigInt::from(3), BigInt::from(2));
    let three_quarters = Rational::new(BigInt::from(3), BigInt::from(4));
    let two = Rational::from_integer(BigInt::from(2));
    while m > three_halves {
        m /= &two;
        k += 1;
    }
    while m < three_quarters {
        m *= &two;
        k -= 1;
    }
    // Tail budget: split between the mantissa series and k copies of ln 2.
    let guard = 4 + 64 - (k.unsigned_abs().max(1)).leading_zeros();
    let series_bits = bits + guard;
    let ln_m = atanh_series(&m, series_bits);
    let result = if k == 0 {
        ln_m
    } else {
        let ln2 = atanh_series(&two, series_bits);
        let scaled = if k > 0 {
            Enclosure::new(ln2.lo * Rational::from_integer(BigInt::from(k)), ln2.hi * Rational::from_integer(BigInt::from(k)), series_bits)
        } else {
            Enclosure::new(ln2.hi * Rational::from_integer(BigInt::from(k)), ln2.lo * Rational::from_integer(BigInt::from(k)), series_bits)
        };
        ln_m.add(&scaled)
    };
    result.round_outward(bits)
}

/// ln via 2*atanh((m-1)/(m+1)) with the exact remainder bound
/// |tail| <= |z|^(2J+3) / ((2J+3)(1-z^2)).
fn atanh_series(m: &Rational, bits: u32) -> Enclosure {
    let one = Rational::one();
    let z = (m - &one) / (m + &one);
    debug_assert!(z.clone().abs() < one, "range reduction failed");
    let z2 = &z * &z;
    let tolerance = Rational::new(BigInt::one(), BigInt::one() << (bits as usize + 1));
    let one_minus_z2 = &one - &z2;
    let mut term = z.clone(); // z^(2j+1)
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    loop {
        sum += &term / Rational::from_integer(BigInt::from(2 * j + 1));
        term = &term * &z2;
        // term is now |z|^(2j+3) up to sign; bound the tail that starts there.
        let bound = term.clone().abs()
            / (Rational::from_integer(BigInt::from(2 * j + 3)) * &one_minus_z2);
        if bound <= tolerance {
            let doubled = &sum * Rational::from_integer(BigInt::from(2));
            let spread = bound * Rational::from_integer(BigInt::from(2));
            return Enclosure::new(&doubled - &spread, doubled + spread, bits)
                .round_outward(bits);
        }
        j += 1;
    }
}
