//! Binary (two-variable homogeneous) forms and univariate helpers: exact
//! division by linear factors, perfect-square testing, and rational root
//! extraction used by the resultant-based point solvers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::form::Form;
use crate::rational::{denominator_lcm, rational_sqrt_exact, Rational};

/// Homogeneous binary form of degree `d` in `(s, t)`;
/// `coeffs[i]` is the coefficient of `s^(d-i) t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Read a homogeneous 2-variable `Form` of the given degree.
    pub fn from_form(f: &Form, degree: u32) -> Self {
        assert_eq!(f.nvars(), 2);
        let mut coeffs = vec![Rational::zero(); degree as usize + 1];
        for (e, c) in f.terms() {
            assert_eq!(e[0] + e[1], degree, "form not homogeneous of stated degree");
            coeffs[e[1] as usize] = c.clone();
        }
        BinaryForm { coeffs }
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..(d - i) {
                term *= s;
            }
            for _ in 0..i {
                term *= t;
            }
            acc += term;
        }
        acc
    }

    /// Exact division by the linear form vanishing at the projective root
    /// `(s0, t0)`, i.e. by `t0*s - s0*t`. `None` when it does not divide.
    pub fn divide_by_root(&self, s0: &Rational, t0: &Rational) -> Option<BinaryForm> {
        assert!(!(s0.is_zero() && t0.is_zero()));
        if !self.eval(s0, t0).is_zero() {
            return None;
        }
        let d = self.degree();
        if d == 0 {
            return None;
        }
        // Solve q * (t0*s - s0*t) = self coefficient-wise.
        let mut q = vec![Rational::zero(); d];
        if !t0.is_zero() {
            // q[0] = c[0]/t0, then q[i] = (c[i] + s0*q[i-1]) / t0
            q[0] = &self.coeffs[0] / t0;
            for i in 1..d {
                q[i] = (&self.coeffs[i] + &(s0 * &q[i - 1])) / t0;
            }
        } else {
            // factor is -s0 * t: self must have zero s^d coefficient
            if !self.coeffs[0].is_zero() {
                return None;
            }
            let neg_inv = -s0.recip();
            for i in 0..d {
                q[i] = &self.coeffs[i + 1] * &neg_inv;
            }
        }
        let quotient = BinaryForm { coeffs: q };
        // remainder check
        let mut check = vec![Rational::zero(); d + 1];
        for (i, qc) in quotient.coeffs.iter().enumerate() {
            check[i] += qc * t0;
            check[i + 1] -= qc * s0;
        }
        if check == self.coeffs {
            Some(quotient)
        } else {
            None
        }
    }

    /// All rational projective roots `(s:t)` with multiplicity, each in
    /// lowest integer terms with a deterministic sign normalization. Roots
    /// the integer factorizer cannot certify are simply not returned;
    /// callers that need all roots compare counts against the degree.
    pub fn rational_roots(&self) -> Vec<(Rational, Rational)> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut f = self.clone();
        // roots at (0:1): leading t-power
        loop {
            if f.degree() == 0 {
                return roots;
            }
            if f.coeffs[f.degree()].is_zero() {
                match f.divide_by_root(&Rational::zero(), &Rational::one()) {
                    Some(q) => {
                        roots.push((Rational::zero(), Rational::one()));
                        f = q;
                    }
                    None => break,
                }
            } else {
                break;
            }
        }
        // affine roots: t/s = r with u(r) = f(1, r) = 0
        let poly: Vec<Rational> = f.coeffs.clone();
        for r in univariate_rational_roots(&poly) {
            let mut g = f.clone();
            while let Some(q) = g.divide_by_root(&Rational::one(), &r) {
                roots.push((Rational::one(), r.clone()));
                if q.degree() == 0 {
                    return roots;
                }
                g = q;
            }
            f = g;
        }
        roots
    }
}

/// If the degree-4 binary form `b` is the square of a binary quadratic,
/// return that quadratic (2-variable `Form` of degree 2).
pub fn binary_square_test(b: &Form) -> Option<Form> {
    assert_eq!(b.nvars(), 2);
    if b.is_zero() {
        return Some(Form::zero(2));
    }
    let bf = BinaryForm::from_form(b, 4);
    let c = &bf.coeffs;
    // candidate q = q0 s^2 + q1 s t + q2 t^2
    let (q0, q1, q2);
    if !c[0].is_zero() {
        q0 = rational_sqrt_exact(&c[0])?;
        q1 = &c[1] / &(&q0 + &q0);
        q2 = (&c[2] - &(&q1 * &q1)) / (&q0 + &q0);
    } else if !c[4].is_zero() {
        q0 = Rational::zero();
        q2 = rational_sqrt_exact(&c[4])?;
        q1 = &c[3] / &(&q2 + &q2);
    } else {
        // both extreme coefficients vanish: square must be (q1 s t)^2
        q0 = Rational::zero();
        q2 = Rational::zero();
        q1 = rational_sqrt_exact(&c[2])?;
    }
    let mut q = Form::zero(2);
    q.add_term(vec![2, 0], q0);
    q.add_term(vec![1, 1], q1);
    q.add_term(vec![0, 2], q2);
    if (&q * &q) == *b {
        Some(q)
    } else {
        None
    }
}

/// Divisors of `n` (positive only), via trial division. Factors above the
/// trial bound are kept as a single pseudo-prime, so for pathological
/// inputs some divisors can be missed; root finders treat missing roots
/// as "not rationally solvable".
fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(f) = factors.iter_mut().find(|(q, _)| *q == p) {
            f.1 += 1;
        } else {
            factors.push((p, 1));
        }
    };
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= bound {
        while (&n % &d).is_zero() {
            n = &n / &d;
            push(d.clone(), &mut factors);
        }
        d += 1;
    }
    if !n.is_one() {
        push(n, &mut factors);
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
        if divs.len() > 100_000 {
            divs.truncate(100_000);
        }
    }
    divs.sort();
    divs.dedup();
    divs
}

/// Rational roots (without multiplicity) of the polynomial
/// `sum coeffs[i] t^i` with rational coefficients.
pub fn univariate_rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    // strip trailing zeros and clear denominators
    let mut c = coeffs.to_vec();
    while c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return roots;
    }
    let l = denominator_lcm(&c);
    let mut ic: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    // root zero
    let mut shift = 0;
    while ic[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        roots.push(Rational::zero());
        ic.drain(0..shift);
    }
    if ic.len() <= 1 {
        return roots;
    }
    let a0 = ic[0].clone();
    let an = ic[ic.len() - 1].clone();
    let eval = |r: &Rational| -> bool {
        let mut acc = Rational::zero();
        for c in ic.iter().rev() {
            acc = acc * r + Rational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for p in positive_divisors(&a0) {
        for q in positive_divisors(&an) {
            if p.gcd(&q) != BigInt::one() {
                continue;
            }
            let cand = Rational::new(p.clone(), q.clone());
            if eval(&cand) {
                roots.push(cand.clone());
            }
            let neg = -cand;
            if eval(&neg) {
                roots.push(neg);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Monic gcd of two univariate rational polynomials (ascending coeffs).
pub fn univariate_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
        while v.last().map(|x| x.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    }
    fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead = &b[db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            if dr < db {
                break;
            }
            let f = &r[dr] / lead;
            for i in 0..=db {
                let v = &r[dr - db + i] - &(&b[i] * &f);
                r[dr - db + i] = v;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        let inv = lead.recip();
        for c in a.iter_mut() {
            *c = &*c * &inv;
        }
    }
    a
}
