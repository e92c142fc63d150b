//! Exact characteristic polynomials and Perron-root isolation.
//!
//! Faddeev-LeVerrier runs over `i128` (every division is exact), and the
//! largest real root is isolated with a Sturm sequence over the rationals.
//! Nothing here touches floating point until the final conversion, so it
//! serves as an independent check on the power iteration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::TransitionMatrix;

/// Coefficients of `det(xI - A)`, lowest degree first; the last entry is 1.
pub fn characteristic_polynomial(a: &TransitionMatrix) -> Vec<i128> {
    let n = a.order();
    let a_int: Vec<i128> = a.to_f64().iter().map(|&v| v as i128).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![0i128; n * n];
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{n-k+1} I
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i128;
                for l in 0..n {
                    acc += a_int[i * n + l] * m[l * n + j];
                }
                next[i * n + j] = acc;
            }
            next[i * n + i] += coeffs[n - k + 1];
        }
        m = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut trace = 0i128;
        for i in 0..n {
            for l in 0..n {
                trace += a_int[i * n + l] * m[l * n + i];
            }
        }
        debug_assert_eq!(trace % k as i128, 0);
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len() - 1
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

fn rem(num: &Poly, den: &Poly) -> Poly {
    let mut r = num.clone();
    let dd = degree(den);
    let lead = den[dd].clone();
    while !is_zero_poly(&r) && degree(&r) >= dd {
        let shift = degree(&r) - dd;
        let factor = r[degree(&r)].clone() / &lead;
        for (k, c) in den.iter().enumerate() {
            r[k + shift] -= &factor * c;
        }
        // leading term cancels exactly
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
    }
    r
}

fn quotient(num: &Poly, den: &Poly) -> Poly {
    let mut r = num.clone();
    let dd = degree(den);
    let lead = den[dd].clone();
    if degree(num) < dd {
        return vec![BigRational::zero()];
    }
    let mut q = vec![BigRational::zero(); degree(num) - dd + 1];
    while !is_zero_poly(&r) && degree(&r) >= dd {
        let shift = degree(&r) - dd;
        let factor = r[degree(&r)].clone() / &lead;
        for (k, c) in den.iter().enumerate() {
            r[k + shift] -= &factor * c;
        }
        q[shift] = factor;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
    }
    trim(q)
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !is_zero_poly(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let n = seq.len();
        if is_zero_poly(&seq[n - 1]) {
            seq.pop();
            break;
        }
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if is_zero_poly(&r) {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut prev = 0i8;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
    }
    changes
}

/// Largest real root of `det(xI - A)`, isolated to an interval of width
/// below `width`. For a nonnegative matrix this is the Perron root.
pub fn perron_root(a: &TransitionMatrix, width: f64) -> f64 {
    let coeffs = characteristic_polynomial(a);
    let p: Poly = coeffs
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    // square-free part keeps the Sturm count exact at repeated roots
    let g = gcd(&p, &derivative(&p));
    let sf = if degree(&g) == 0 {
        p.clone()
    } else {
        quotient(&p, &g)
    };
    let seq = sturm_sequence(&sf);

    let bound = 1 + coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(1);
    let mut lo = BigRational::from_integer(BigInt::from(-1));
    let mut hi = BigRational::from_integer(BigInt::from(bound as i128));
    let two = BigRational::from_integer(BigInt::from(2));
    let width = BigRational::from_float(width)
        .unwrap_or_else(|| BigRational::one() / (BigInt::from(1u64 << 40)));
    // invariant: the largest real root lies in (lo, hi]
    let v_hi = sign_changes(&seq, &hi);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if sign_changes(&seq, &mid) > v_hi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((lo + hi) / two).to_f64().unwrap_or(f64::NAN)
}
