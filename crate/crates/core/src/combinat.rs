//! Combinatorial kernels: factorials, Stirling numbers, falling factorials,
//! partial and complete exponential Bell polynomials, and the Newton
//! identities for symmetric functions.
//!
//! Bell polynomials are computed by the standard index recurrence with a
//! per-call table, so concurrent invocations share no mutable state. A
//! set-partition enumeration of the same quantities is kept in the test
//! module as a small-scale oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polyring::{MPoly, Rat, Var};

pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_bigint(acc)
}

pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_bigint(acc)
}

/// Signed Stirling numbers of the first kind: `(x)_k = sum_j s(k,j) x^j`.
/// Returns zero for `j > k`.
pub fn stirling1(k: usize, j: usize) -> Rat {
    if j > k {
        return Rat::zero();
    }
    Rat::from_bigint(stirling1_row(k)[j].clone())
}

/// The full row `s(k, 0..=k)`.
fn stirling1_row(k: usize) -> Vec<BigInt> {
    // s(n+1, j) = s(n, j-1) - n * s(n, j)
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..k {
        let mut next = vec![BigInt::zero(); n + 2];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] -= BigInt::from(n) * v;
        }
        row = next;
    }
    row
}

/// The lower factorial polynomial `(w)_j = w (w-1) ... (w-j+1)`, with
/// `(w)_0 = 1`.
pub fn falling_factorial(w: &MPoly, j: usize) -> MPoly {
    let mut acc = MPoly::one();
    for i in 0..j {
        acc = &acc * &(w - &MPoly::from_int(i as i64));
    }
    acc
}

/// All partial exponential Bell polynomials `B_{i,j}(a_1, ..., a_{i-j+1})`
/// for `0 <= j <= i <= n`; `a[0]` holds `a_1`.
pub fn bell_triangle(n: usize, a: &[MPoly]) -> Vec<Vec<MPoly>> {
    assert!(a.len() >= n, "need {n} arguments, got {}", a.len());
    let mut b: Vec<Vec<MPoly>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![MPoly::zero(); i + 1];
        if i == 0 {
            row[0] = MPoly::one();
        } else {
            // B_{i,j} = sum_m C(i-1, m-1) a_m B_{i-m, j-1}
            for j in 1..=i {
                let mut acc = MPoly::zero();
                for m in 1..=(i - j + 1) {
                    let prev = &b[i - m][j - 1];
                    if prev.is_zero() {
                        continue;
                    }
                    let c = binomial(i - 1, m - 1);
                    acc = &acc + &(&a[m - 1] * prev).mul_rat(&c);
                }
                row[j] = acc;
            }
        }
        b.push(row);
    }
    b
}

/// The partial exponential Bell polynomial `B_{i,j}`. Panics unless
/// `1 <= j <= i` and `a` has at least `i - j + 1` entries.
pub fn bell_partial(i: usize, j: usize, a: &[MPoly]) -> MPoly {
    assert!(1 <= j && j <= i, "need 1 <= j <= i, got i={i}, j={j}");
    assert!(
        a.len() >= i - j + 1,
        "need {} arguments, got {}",
        i - j + 1,
        a.len()
    );
    // Pad so the triangle helper can assume a full argument list.
    let mut args = a.to_vec();
    args.resize(i, MPoly::zero());
    bell_triangle(i, &args)[i][j].clone()
}

/// The complete exponential Bell polynomial `Y_k = sum_j B_{k,j}`, with
/// `Y_0 = 1`.
pub fn bell_complete(k: usize, b: &[MPoly]) -> MPoly {
    if k == 0 {
        return MPoly::one();
    }
    assert!(b.len() >= k, "need {k} arguments, got {}", b.len());
    let triangle = bell_triangle(k, b);
    let mut acc = MPoly::zero();
    for j in 1..=k {
        acc = &acc + &triangle[k][j];
    }
    acc
}

/// The elementary symmetric polynomial `e_n` expressed through the power
/// sums `p_1..p_n` via Newton's identities; `p[0]` holds `p_1`.
pub fn elementary_from_powersums(n: usize, p: &[MPoly]) -> MPoly {
    assert!(p.len() >= n, "need {n} power sums, got {}", p.len());
    // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} p_i e_{k-i}
    let mut e: Vec<MPoly> = vec![MPoly::one()];
    for k in 1..=n {
        let mut acc = MPoly::zero();
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc = &acc + &(&p[i - 1] * &e[k - i]).mul_rat(&Rat::from_int(sign));
        }
        e.push(acc.mul_rat(&Rat::new(1, k as i64)));
    }
    e.pop().unwrap()
}

/// Direct expansion of the elementary symmetric polynomial `e_n` in the
/// given values: the sum over all n-subsets of their products.
pub fn elementary_direct(n: usize, xs: &[MPoly]) -> MPoly {
    if n > xs.len() {
        return MPoly::zero();
    }
    if n == 0 {
        return MPoly::one();
    }
    let mut acc = MPoly::zero();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let mut prod = MPoly::one();
        for &i in &idx {
            prod = &prod * &xs[i];
        }
        acc = &acc + &prod;
        // next combination in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return acc;
            }
            i -= 1;
            if idx[i] != i + xs.len() - n {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The power sums `p_1..p_upto` of the given values.
pub fn power_sums(xs: &[MPoly], upto: usize) -> Vec<MPoly> {
    (1..=upto)
        .map(|i| {
            xs.iter()
                .fold(MPoly::zero(), |acc, x| &acc + &x.pow(i as u32))
        })
        .collect()
}

/// `sum_j s(k,j) x^j` as a polynomial in `x`; the expansion of the falling
/// factorial through the first-kind Stirling numbers.
pub fn stirling_expansion(k: usize, x: &Var) -> MPoly {
    let mut acc = MPoly::zero();
    for (j, s) in stirling1_row(k).iter().enumerate() {
        let xj = MPoly::monomial(
            crate::polyring::Monomial::var(x.clone(), j as u32),
            Rat::one(),
        );
        acc = &acc + &xj.mul_rat(&Rat::from_bigint(s.clone()));
    }
    acc
}
