//! The apolarity and polarity calculus: the differential pairing, polars,
//! dual conics, conjugation, apolar cubics, and rational parametrization
//! of conics.

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::Error;
use crate::form::{monomials, Form};
use crate::matrix::QMatrix;
use crate::rational::{format_rational, parse_rational, Rational};

/// Projective point of the plane. Equality is projective; hashing and
/// comparison go through the canonical representative whose first nonzero
/// coordinate is 1.
#[derive(Clone, Debug)]
pub struct HomPoint {
    coords: [Rational; 3],
}

impl HomPoint {
    pub fn new(coords: [Rational; 3]) -> Self {
        assert!(coords.iter().any(|c| !c.is_zero()), "zero vector is not a point");
        HomPoint { coords }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        HomPoint::new([
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::from_integer(c.into()),
        ])
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    pub fn scale(&self, lambda: &Rational) -> HomPoint {
        assert!(!lambda.is_zero());
        HomPoint::new([
            &self.coords[0] * lambda,
            &self.coords[1] * lambda,
            &self.coords[2] * lambda,
        ])
    }

    /// First nonzero coordinate scaled to 1.
    pub fn canonical(&self) -> [Rational; 3] {
        let lead = self.coords.iter().find(|c| !c.is_zero()).unwrap();
        let inv = lead.recip();
        [
            &self.coords[0] * &inv,
            &self.coords[1] * &inv,
            &self.coords[2] * &inv,
        ]
    }

    pub fn projectively_eq(&self, other: &HomPoint) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .map(|c| Value::String(format_rational(c)))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<HomPoint, Error> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse("point: expected array of 3 strings".into()))?;
        let mut coords = Vec::new();
        for x in arr {
            let s = x
                .as_str()
                .map(|s| s.to_string())
                .or_else(|| x.as_i64().map(|n| n.to_string()))
                .ok_or_else(|| Error::Parse("point coordinate: expected string".into()))?;
            coords.push(parse_rational(&s)?);
        }
        let coords: [Rational; 3] = coords.try_into().unwrap();
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Parse("point: all coordinates zero".into()));
        }
        Ok(HomPoint::new(coords))
    }
}

impl PartialEq for HomPoint {
    fn eq(&self, other: &Self) -> bool {
        self.projectively_eq(other)
    }
}
impl Eq for HomPoint {}

/// 3x3 determinant of three point coordinate rows: the bracket `|pqr|`.
pub fn bracket(p: &HomPoint, q: &HomPoint, r: &HomPoint) -> Rational {
    det3(p.coords(), q.coords(), r.coords())
}

pub fn det3(a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3]) -> Rational {
    &a[0] * &(&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * &(&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * &(&b[0] * &c[1] - &b[1] * &c[0])
}

/// Cross product of coordinate vectors; the line through two points, or
/// the intersection point of two lines.
pub fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Point conic: a degree-2 form in `X` together with its symmetric
/// coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConic {
    form: Form,
    matrix: QMatrix,
}

/// Line conic: a degree-2 form in the dual indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineConic {
    form: Form,
    matrix: QMatrix,
}

/// Symmetric 3x3 coefficient matrix of a (possibly zero) degree-2 form
/// in three variables.
pub fn conic_matrix_of_form(f: &Form) -> QMatrix {
    let mut m = QMatrix::zeros(3, 3);
    for (e, c) in f.terms() {
        let idx: Vec<usize> = (0..3).filter(|&i| e[i] > 0).collect();
        match idx.len() {
            1 => {
                *m.at_mut(idx[0], idx[0]) = c.clone();
            }
            2 => {
                let half = c / Rational::from_integer(2.into());
                *m.at_mut(idx[0], idx[1]) = half.clone();
                *m.at_mut(idx[1], idx[0]) = half;
            }
            _ => unreachable!(),
        }
    }
    m
}

fn conic_form_of_matrix(m: &QMatrix) -> Form {
    let mut f = Form::zero(3);
    for i in 0..3 {
        for j in i..3 {
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = if i == j {
                m.at(i, i).clone()
            } else {
                m.at(i, j) + m.at(j, i)
            };
            f.add_term(e, c);
        }
    }
    f
}

impl PointConic {
    pub fn from_form(f: Form) -> Result<Self, Error> {
        if f.is_zero() || f.homogeneous_degree_in(&[0, 1, 2]) != Some(2) || f.nvars() != 3 {
            return Err(Error::Degenerate("conic: expected nonzero degree-2 form".into()));
        }
        let matrix = conic_matrix_of_form(&f);
        Ok(PointConic { form: f, matrix })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.matrix.det().unwrap().is_zero()
    }

    pub fn contains(&self, p: &HomPoint) -> bool {
        self.form.eval(p.coords()).is_zero()
    }

    /// Value of the associated bilinear form on two coordinate vectors.
    pub fn bilinear(&self, u: &[Rational; 3], v: &[Rational; 3]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                s += self.matrix.at(i, j) * &(&u[i] * &v[j]);
            }
        }
        s
    }

    /// Coefficient vector of the polar line of `p`: `2 A p`.
    pub fn polar_line(&self, p: &HomPoint) -> [Rational; 3] {
        let v = self.matrix.mul_vec(p.coords());
        [&v[0] + &v[0], &v[1] + &v[1], &v[2] + &v[2]]
    }
}

impl LineConic {
    pub fn from_form(f: Form) -> Result<Self, Error> {
        if f.is_zero() || f.homogeneous_degree_in(&[0, 1, 2]) != Some(2) || f.nvars() != 3 {
            return Err(Error::Degenerate("line conic: expected nonzero degree-2 form".into()));
        }
        let matrix = conic_matrix_of_form(&f);
        Ok(LineConic { form: f, matrix })
    }

    pub fn from_matrix(m: QMatrix) -> Self {
        let form = conic_form_of_matrix(&m);
        LineConic { form, matrix: m }
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// Pairing with the square of a line: `ell^T A ell`.
    pub fn eval_on_line(&self, ell: &[Rational; 3]) -> Rational {
        let v = self.matrix.mul_vec(ell);
        let mut s = Rational::zero();
        for i in 0..3 {
            s += &v[i] * &ell[i];
        }
        s
    }
}

/// The apolarity pairing: apply `phi` (a form in the dual indeterminates,
/// degree `d`) as a differential operator to `f` (degree `n >= d`).
pub fn apolarity_pair(phi: &Form, f: &Form) -> Result<Form, Error> {
    let d = phi.homogeneous_degree_in(&(0..phi.nvars()).collect::<Vec<_>>());
    let n = f.homogeneous_degree_in(&(0..f.nvars()).collect::<Vec<_>>());
    if let (Some(d), Some(n)) = (d, n) {
        if d > n && !phi.is_zero() && !f.is_zero() {
            return Err(Error::Degenerate(format!(
                "apolarity pairing: operator degree {d} exceeds form degree {n}"
            )));
        }
    }
    Ok(f.apply_operator(phi, &(0..f.nvars()).collect::<Vec<_>>()))
}

/// First polar of `xi` with respect to `f`: the polarization operator.
pub fn polar(xi: &HomPoint, f: &Form) -> Form {
    let mut out = Form::zero(f.nvars());
    for i in 0..3 {
        out = &out + &f.partial(i).scale(&xi.coords()[i]);
    }
    out
}

/// The dual curve of a nonsingular point conic: the line conic whose
/// matrix is the adjugate (equal to the inverse up to scale).
pub fn dual_conic(theta: &PointConic) -> Result<LineConic, Error> {
    if !theta.is_nonsingular() {
        return Err(Error::SingularConic);
    }
    Ok(LineConic::from_matrix(theta.matrix().adjugate()?))
}

/// A point conic `c` is conjugate to `theta` when it is apolar to the
/// dual conic of `theta`.
pub fn is_conjugate(c: &PointConic, theta: &PointConic) -> Result<bool, Error> {
    let star = dual_conic(theta)?;
    Ok(apolarity_pair(star.form(), c.form())?.is_zero())
}

/// The unique cubic apolar to `theta` vanishing at the given points;
/// the linear system must have a one-dimensional solution space.
pub fn cubic_through_apolar(theta: &PointConic, pts: &[HomPoint]) -> Result<Form, Error> {
    if !theta.is_nonsingular() {
        return Err(Error::SingularConic);
    }
    let star = dual_conic(theta)?;
    let cubic_monoms = monomials(3, 3);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // three apolarity conditions: coefficients of P_{theta*}(D)
    let lin_monoms = monomials(3, 1);
    let images: Vec<Form> = cubic_monoms
        .iter()
        .map(|m| {
            let mono = Form::monomial(3, m, Rational::one());
            apolarity_pair(star.form(), &mono).unwrap()
        })
        .collect();
    for lm in &lin_monoms {
        rows.push(images.iter().map(|g| g.coeff(lm)).collect());
    }
    // evaluation conditions
    for p in pts {
        rows.push(
            cubic_monoms
                .iter()
                .map(|m| Form::monomial(3, m, Rational::one()).eval(p.coords()))
                .collect(),
        );
    }
    let ker = QMatrix::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(Error::Degenerate(format!(
            "apolar cubic: solution space has dimension {}",
            ker.len()
        )));
    }
    let mut d = Form::zero(3);
    for (m, c) in cubic_monoms.iter().zip(&ker[0]) {
        d.add_term(m.clone(), c.clone());
    }
    Ok(d)
}

/// The apolar cubic through six points lying on `theta`.
pub fn apolar_cubic(theta: &PointConic, pts: &[HomPoint; 6]) -> Result<Form, Error> {
    for p in pts.iter() {
        if !theta.contains(p) {
            return Err(Error::Degenerate("apolar cubic: point not on the conic".into()));
        }
    }
    cubic_through_apolar(theta, pts.as_slice())
}

/// Degree-2 rational parametrization of a nonsingular conic from one of
/// its rational points; `t -> second intersection of a line through the
/// base point`, with the base point itself at parameter `(1, 0)`.
#[derive(Clone, Debug)]
pub struct ConicParam {
    /// components as binary forms of degree 2 in `(s, t)`
    pub comps: [Form; 3],
    base: HomPoint,
    dir_a: [Rational; 3],
    dir_b: [Rational; 3],
}

impl ConicParam {
    pub fn eval(&self, s: &Rational, t: &Rational) -> HomPoint {
        let v: Vec<Rational> = self
            .comps
            .iter()
            .map(|f| f.eval(&[s.clone(), t.clone()]))
            .collect();
        HomPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])
    }

    /// Parameter of a point of the conic.
    pub fn parameter_of(&self, y: &HomPoint) -> (Rational, Rational) {
        if y.projectively_eq(&self.base) {
            return (Rational::one(), Rational::zero());
        }
        let pa = HomPoint::new(self.dir_a.clone());
        let pb = HomPoint::new(self.dir_b.clone());
        let s = bracket(&self.base, y, &pb);
        let t = -bracket(&self.base, y, &pa);
        let param = HomPoint::new([s.clone(), t.clone(), Rational::zero()]);
        let _ = &param; // (s,t) nonzero by independence of the frame
        (s, t)
    }
}

pub fn parametrize_conic(theta: &PointConic, p: &HomPoint) -> Result<ConicParam, Error> {
    if !theta.is_nonsingular() {
        return Err(Error::SingularConic);
    }
    if !theta.contains(p) {
        return Err(Error::Degenerate("parametrize: point not on the conic".into()));
    }
    // direction a: a second point of the tangent line at p
    let tangent = theta.polar_line(p);
    let ker = QMatrix::from_rows(vec![tangent.to_vec()]).kernel();
    let a_vec = ker
        .iter()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
        .find(|v| !HomPoint::new(v.clone()).projectively_eq(p))
        .expect("tangent line has a point besides the contact point");
    // direction b: a standard basis vector completing (p, a) to a frame
    let b_vec = (0..3)
        .map(|i| {
            let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
            v[i] = Rational::one();
            v
        })
        .find(|v| !det3(p.coords(), &a_vec, v).is_zero())
        .expect("frame completion");
    // q(s,t) = B(u,u) p - 2 B(p,u) u  with u = s a + t b
    let baa = theta.bilinear(&a_vec, &a_vec);
    let bab = theta.bilinear(&a_vec, &b_vec);
    let bbb = theta.bilinear(&b_vec, &b_vec);
    let bpb = theta.bilinear(p.coords(), &b_vec);
    debug_assert!(!baa.is_zero(), "tangent direction with zero self-pairing");
    let s = Form::variable(2, 0);
    let t = Form::variable(2, 1);
    let buu = &(&(&s * &s).scale(&baa) + &(&s * &t).scale(&(&bab + &bab))) + &(&t * &t).scale(&bbb);
    // B(p,u) = t * B(p,b) because a lies on the polar line of p
    let bpu2 = &t.scale(&(&bpb + &bpb));
    let mut comps = Vec::new();
    for i in 0..3 {
        let u_i = &s.scale(&a_vec[i]) + &t.scale(&b_vec[i]);
        comps.push(&buu.scale(&p.coords()[i]) - &(bpu2 * &u_i));
    }
    let comps: [Form; 3] = comps.try_into().unwrap();
    Ok(ConicParam {
        comps,
        base: p.clone(),
        dir_a: a_vec,
        dir_b: b_vec,
    })
}
