//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Form`] lives in a polynomial ring with a fixed number of variables.
//! Bihomogeneous objects (the Morley form, say) are represented in one ring
//! whose variable list concatenates the two sets: `(xi0,xi1,xi2,X0,X1,X2)`.
//! No zero coefficient is ever stored and all arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::Error;
use crate::rational::{format_rational, parse_rational, Rational};

/// Sparse polynomial: exponent vector -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Form {
    pub fn zero(nvars: usize) -> Self {
        Form { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut f = Form::zero(nvars);
        f.add_term(vec![0; nvars], c);
        f
    }

    /// The variable `X_i` as a form.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut f = Form::zero(nvars);
        f.add_term(e, Rational::from_integer(1.into()));
        f
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut f = Form::zero(nvars);
        f.add_term(exps.to_vec(), c);
        f
    }

    /// Linear form `c0*X0 + c1*X1 + ...`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut f = Form::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars);
        }
        let mut f = Form::zero(self.nvars);
        for (e, a) in &self.terms {
            f.terms.insert(e.clone(), a * c);
        }
        f
    }

    pub fn pow(&self, k: u32) -> Form {
        let mut acc = Form::constant(self.nvars, Rational::from_integer(1.into()));
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e.iter()) {
                for _ in 0..ei {
                    t *= xi;
                }
            }
            total += t;
        }
        total
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Form {
        assert!(i < self.nvars);
        let mut f = Form::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            f.add_term(e2, c * Rational::from_integer(e[i].into()));
        }
        f
    }

    /// Total degree of the highest term, or `None` for the zero form.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// If every term has the same total degree in the listed variables,
    /// return that degree.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = vars.iter().map(|&v| e[v]).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Substitute `subs[i]` for variable `i`. All substituted forms must
    /// live in a common ring, which becomes the ring of the result.
    pub fn substitute(&self, subs: &[Form]) -> Form {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map(|f| f.nvars).unwrap_or(0);
        assert!(subs.iter().all(|f| f.nvars == m));
        let mut out = Form::zero(m);
        for (e, c) in &self.terms {
            let mut t = Form::constant(m, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = &t * &subs[i].pow(ei);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Reinterpret in a ring with `new_nvars` variables, sending variable
    /// `i` to variable `i + offset`.
    pub fn shift_vars(&self, new_nvars: usize, offset: usize) -> Form {
        assert!(self.nvars + offset <= new_nvars);
        let mut f = Form::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_nvars];
            e2[offset..offset + self.nvars].copy_from_slice(e);
            f.terms.insert(e2, c.clone());
        }
        f
    }

    /// Apply a polynomial differential operator. `op` is a form in `k`
    /// variables read as a polynomial in the operators `d/d X_{vars[j]}`;
    /// it differentiates `self` in those variables.
    pub fn apply_operator(&self, op: &Form, vars: &[usize]) -> Form {
        assert_eq!(op.nvars, vars.len());
        let mut out = Form::zero(self.nvars);
        for (e, c) in &op.terms {
            let mut g = self.clone();
            for (j, &ej) in e.iter().enumerate() {
                for _ in 0..ej {
                    g = g.partial(vars[j]);
                    if g.is_zero() {
                        break;
                    }
                }
            }
            out = &out + &g.scale(c);
        }
        out
    }

    /// True when `self = lambda * other` for some nonzero rational lambda.
    /// Two zero forms are proportional.
    pub fn is_proportional_to(&self, other: &Form) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (e, a) = self.terms.iter().next().unwrap();
        let b = other.coeff(e);
        if b.is_zero() {
            return false;
        }
        let lambda = a / &b;
        *self == other.scale(&lambda)
    }

    /// JSON per the wire format: `[{"exp": [...], "coeff": "p/q"}, ...]`.
    pub fn to_json(&self) -> Value {
        let arr: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"exp": e, "coeff": format_rational(c)}))
            .collect();
        Value::Array(arr)
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<Form, Error> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("form: expected array".into()))?;
        let mut f = Form::zero(nvars);
        for item in arr {
            let exp = item
                .get("exp")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Parse("form term: missing exp".into()))?;
            if exp.len() != nvars {
                return Err(Error::Parse(format!(
                    "form term: expected {nvars} exponents, got {}",
                    exp.len()
                )));
            }
            let exps: Vec<u32> = exp
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as u32)
                        .ok_or_else(|| Error::Parse("form term: bad exponent".into()))
                })
                .collect::<Result<_, _>>()?;
            let coeff = item
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("form term: missing coeff".into()))?;
            f.add_term(exps, parse_rational(coeff)?);
        }
        Ok(f)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", format_rational(c))?;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 1 {
                    write!(f, "*v{i}")?;
                } else if ei > 1 {
                    write!(f, "*v{i}^{ei}")?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add for &'a Form {
    type Output = Form;
    fn add(self, rhs: &'a Form) -> Form {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub for &'a Form {
    type Output = Form;
    fn sub(self, rhs: &'a Form) -> Form {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Neg for &'a Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale(&Rational::from_integer((-1).into()))
    }
}

impl<'a> Mul for &'a Form {
    type Output = Form;
    fn mul(self, rhs: &'a Form) -> Form {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Form::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// descending lexicographic order (for 3 variables and degree 2 this is
/// `X0^2, X0 X1, X0 X2, X1^2, X1 X2, X2^2`). Every fixed monomial order
/// in the crate refers to this listing.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, deg: u32, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if nvars == 1 {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for d in (0..=deg).rev() {
            prefix.push(d);
            rec(nvars - 1, deg - d, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, deg, &mut out, &mut Vec::new());
    out
}

/// Determinant of a square matrix with `Form` entries, by cofactor
/// expansion along the first row. Intended for small matrices (at most
/// 6x6 in this crate).
pub fn det_forms(m: &[Vec<Form>]) -> Form {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Form::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Form>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[i][k].clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det_forms(&minor);
        if j % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}
