use crate::lattice::Weight;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Highest total degree stored; cohomological degree 6.
pub const MAX_DEGREE: usize = 3;
const LEN: usize = (MAX_DEGREE + 1) * (MAX_DEGREE + 2) / 2;

fn slot(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// An integer polynomial in `u_1, u_2` of total degree at most [`MAX_DEGREE`].
///
/// Coefficients are `i64`; every operation is overflow-checked and panics
/// rather than wrap.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    c: [i64; LEN],
}

fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("polynomial coefficient overflow")
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("polynomial coefficient overflow")
}

impl Poly {
    pub const ZERO: Poly = Poly { c: [0; LEN] };

    pub fn constant(a: i64) -> Poly {
        let mut p = Poly::ZERO;
        p.c[0] = a;
        p
    }

    /// The linear form `x·u_1 + y·u_2` of a weight.
    pub fn linear(w: Weight) -> Poly {
        let mut p = Poly::ZERO;
        p.c[slot(1, 0)] = w.x;
        p.c[slot(0, 1)] = w.y;
        p
    }

    pub fn monomial(i: usize, j: usize, a: i64) -> Poly {
        assert!(i + j <= MAX_DEGREE, "degree {} exceeds the cap", i + j);
        let mut p = Poly::ZERO;
        p.c[slot(i, j)] = a;
        p
    }

    /// Coefficient of `u_1^i u_2^j`.
    pub fn coeff(&self, i: usize, j: usize) -> i128 {
        if i + j > MAX_DEGREE {
            0
        } else {
            self.c[slot(i, j)].into()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Coefficients of the degree-`d` part, from `u_1^d` to `u_2^d`.
    pub fn homogeneous(&self, d: usize) -> Vec<i128> {
        (0..=d).map(|j| self.coeff(d - j, j)).collect()
    }

    pub fn degree_part(&self, d: usize) -> Poly {
        let mut p = Poly::ZERO;
        for j in 0..=d.min(MAX_DEGREE) {
            p.c[slot(d - j, j)] = self.c[slot(d - j, j)];
        }
        p
    }

    /// Total degree of the highest nonzero part, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        (0..=MAX_DEGREE).rev().find(|&d| self.homogeneous(d).iter().any(|&x| x != 0))
    }

    /// True when the polynomial is homogeneous of degree `d` (zero counts).
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        (0..=MAX_DEGREE).filter(|&e| e != d).all(|e| self.homogeneous(e).iter().all(|&x| x == 0))
    }

    pub fn eval(&self, u1: i128, u2: i128) -> i128 {
        let mut s = 0;
        for d in 0..=MAX_DEGREE {
            for j in 0..=d {
                s += self.coeff(d - j, j) * u1.pow((d - j) as u32) * u2.pow(j as u32);
            }
        }
        s
    }

    /// Exact quotient by the linear form of `w` in `Z[u_1, u_2]`, if it exists.
    pub fn div_linear(&self, w: Weight) -> Option<Poly> {
        let (a, b) = (i128::from(w.x), i128::from(w.y));
        if a == 0 && b == 0 {
            return self.is_zero().then_some(Poly::ZERO);
        }
        let mut q = Poly::ZERO;
        for d in 0..=MAX_DEGREE {
            let c = self.homogeneous(d);
            if d == 0 {
                if c[0] != 0 {
                    return None;
                }
                continue;
            }
            // c_j = a·q_j + b·q_{j−1}, q has degree d − 1.
            let mut qs = vec![0i128; d];
            if a != 0 {
                for j in 0..d {
                    let prev = if j == 0 { 0 } else { qs[j - 1] };
                    let r = c[j] - b * prev;
                    if r % a != 0 {
                        return None;
                    }
                    qs[j] = r / a;
                }
                if c[d] != b * qs[d - 1] {
                    return None;
                }
            } else {
                if c[0] != 0 {
                    return None;
                }
                for j in 1..=d {
                    if c[j] % b != 0 {
                        return None;
                    }
                    qs[j - 1] = c[j] / b;
                }
            }
            for (j, &x) in qs.iter().enumerate() {
                q.c[slot(d - 1 - j, j)] = i64::try_from(x).ok()?;
            }
        }
        Some(q)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, o: Poly) -> Poly {
        self += o;
        self
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, o: Poly) {
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a = add(*a, b);
        }
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        self + -o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for a in &mut self.c {
            *a = a.checked_neg().expect("polynomial coefficient overflow");
        }
        self
    }
}

impl Mul<i64> for Poly {
    type Output = Poly;
    fn mul(mut self, s: i64) -> Poly {
        for a in &mut self.c {
            if *a != 0 {
                *a = mul(*a, s);
            }
        }
        self
    }
}

/// Panics if the product exceeds [`MAX_DEGREE`].
impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        let mut p = Poly::ZERO;
        for (ka, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (ia, ja) = EXPONENTS[ka];
            for (kb, &y) in o.c.iter().enumerate() {
                if y != 0 {
                    let (ib, jb) = EXPONENTS[kb];
                    assert!(ia + ja + ib + jb <= MAX_DEGREE, "product degree exceeds the cap");
                    let k = slot(ia + ib, ja + jb);
                    p.c[k] = add(p.c[k], mul(x, y));
                }
            }
        }
        p
    }
}

/// `(i, j)` of the monomial stored in each slot.
const EXPONENTS: [(usize, usize); LEN] =
    [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for d in 0..=MAX_DEGREE {
            for j in 0..=d {
                let c = self.coeff(d - j, j);
                if c == 0 {
                    continue;
                }
                let mut mono = String::new();
                for (var, e) in [("u1", d - j), ("u2", j)] {
                    match e {
                        0 => {}
                        1 => mono.push_str(var),
                        _ => mono.push_str(&format!("{var}^{e}")),
                    }
                }
                terms.push(match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    (-1, false) => format!("-{mono}"),
                    _ => format!("{c}{mono}"),
                });
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
