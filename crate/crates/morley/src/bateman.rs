//! Configurations cut out by a conic and a cubic: the symbolic
//! bihomogeneous determinant, the differential identity, point extraction
//! by resultants, four-line (Roberts) decompositions, the closed-form
//! pentalateral quartic, the tangency branch quartic, and the plane
//! involution defined by the net of minors.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::apolarity::{
    apolarity_pair, conic_matrix_of_form, cross, det3, dual_conic, polar, HomPoint, LineConic,
    PointConic,
};
use crate::binary::{univariate_gcd, univariate_rational_roots, BinaryForm};
use crate::config7::{xi_polar, Config7};
use crate::error::Error;
use crate::form::{det_forms, monomials, Form};
use crate::matrix::QMatrix;
use crate::rational::{format_rational, parse_rational, rational_sqrt_exact, Rational};

/// A nonsingular conic together with a nonzero cubic.
#[derive(Clone, Debug)]
pub struct BatemanInput {
    theta: PointConic,
    d_cubic: Form,
}

impl BatemanInput {
    pub fn new(theta: PointConic, d_cubic: Form) -> Result<Self, Error> {
        if !theta.is_nonsingular() {
            return Err(Error::SingularConic);
        }
        if d_cubic.is_zero() || d_cubic.homogeneous_degree_in(&[0, 1, 2]) != Some(3) {
            return Err(Error::Degenerate("expected a nonzero degree-3 form".into()));
        }
        Ok(BatemanInput { theta, d_cubic })
    }

    pub fn theta(&self) -> &PointConic {
        &self.theta
    }

    pub fn d_cubic(&self) -> &Form {
        &self.d_cubic
    }

    /// Signed maximal minors of the 2x3 matrix of partials
    /// `[[dθ/dX_j], [dD/dX_j]]`: a basis of the net of cubics through the
    /// common zeros.
    pub fn minors(&self) -> [Form; 3] {
        let t: Vec<Form> = (0..3).map(|i| self.theta.form().partial(i)).collect();
        let d: Vec<Form> = (0..3).map(|i| self.d_cubic.partial(i)).collect();
        [
            &(&t[1] * &d[2]) - &(&t[2] * &d[1]),
            &(&t[2] * &d[0]) - &(&t[0] * &d[2]),
            &(&t[0] * &d[1]) - &(&t[1] * &d[0]),
        ]
    }
}

/// Four lines summing to zero and the coefficients of the simultaneous
/// decompositions `theta = sum a_k l_k^2`, `D = sum b_k l_k^3`.
#[derive(Clone, Debug)]
pub struct RobertsData {
    pub lines: [Form; 4],
    pub a: [Rational; 4],
    pub b: [Rational; 4],
}

fn line_coords(l: &Form) -> [Rational; 3] {
    [l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]), l.coeff(&[0, 0, 1])]
}

impl RobertsData {
    /// Strict constructor: the four lines must already sum to zero.
    pub fn new(lines: [Form; 4], a: [Rational; 4], b: [Rational; 4]) -> Result<Self, Error> {
        for l in &lines {
            if l.is_zero() || l.homogeneous_degree_in(&[0, 1, 2]) != Some(1) {
                return Err(Error::Degenerate("expected four nonzero linear forms".into()));
            }
        }
        // three-by-three independence
        let c: Vec<[Rational; 3]> = lines.iter().map(line_coords).collect();
        for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    if det3(&c[i], &c[j], &c[k]).is_zero() {
                        return Err(Error::Degenerate(format!(
                            "lines {}, {}, {} are linearly dependent",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let sum = &(&lines[0] + &lines[1]) + &(&lines[2] + &lines[3]);
        if !sum.is_zero() {
            return Err(Error::Degenerate("lines are not normalized to sum to zero".into()));
        }
        Ok(RobertsData { lines, a, b })
    }

    /// Rescale the line representatives by their (unique up to scale)
    /// linear relation so that they sum to zero, adjusting `a` and `b`
    /// to preserve the decomposed conic and cubic.
    pub fn normalized(lines: [Form; 4], a: [Rational; 4], b: [Rational; 4]) -> Result<Self, Error> {
        let cols: Vec<[Rational; 3]> = lines.iter().map(line_coords).collect();
        let rows = (0..3)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let ker = QMatrix::from_rows(rows).kernel();
        if ker.len() != 1 {
            return Err(Error::Degenerate(format!(
                "linear relations among the four lines form a {}-dimensional space",
                ker.len()
            )));
        }
        let rel = &ker[0];
        if rel.iter().any(|c| c.is_zero()) {
            return Err(Error::Degenerate(
                "three of the lines are linearly dependent (relation has a zero coefficient)".into(),
            ));
        }
        let mut new_lines = Vec::new();
        let mut new_a = Vec::new();
        let mut new_b = Vec::new();
        for k in 0..4 {
            let c = &rel[k];
            new_lines.push(lines[k].scale(c));
            new_a.push(&a[k] / &(c * c));
            new_b.push(&b[k] / &(&(c * c) * c));
        }
        RobertsData::new(
            new_lines.try_into().unwrap(),
            new_a.try_into().unwrap(),
            new_b.try_into().unwrap(),
        )
    }

    pub fn theta_form(&self) -> Form {
        let mut f = Form::zero(3);
        for k in 0..4 {
            f = &f + &(&self.lines[k] * &self.lines[k]).scale(&self.a[k]);
        }
        f
    }

    pub fn d_form(&self) -> Form {
        let mut f = Form::zero(3);
        for k in 0..4 {
            let sq = &self.lines[k] * &self.lines[k];
            f = &f + &(&sq * &self.lines[k]).scale(&self.b[k]);
        }
        f
    }

    pub fn to_json(&self) -> Value {
        let lines: Vec<Value> = self
            .lines
            .iter()
            .map(|l| {
                Value::Array(
                    line_coords(l)
                        .iter()
                        .map(|c| Value::String(format_rational(c)))
                        .collect(),
                )
            })
            .collect();
        let nums = |v: &[Rational; 4]| {
            Value::Array(v.iter().map(|c| Value::String(format_rational(c))).collect())
        };
        json!({ "lines": lines, "a": nums(&self.a), "b": nums(&self.b) })
    }

    /// Parse and normalize. Unnormalized line representatives are accepted
    /// and rescaled to sum to zero.
    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let parse_vec = |v: &Value, what: &str| -> Result<Vec<Rational>, Error> {
            v.as_array()
                .ok_or_else(|| Error::Parse(format!("{what}: expected array")))?
                .iter()
                .map(|x| {
                    let s = x
                        .as_str()
                        .map(|s| s.to_string())
                        .or_else(|| x.as_i64().map(|n| n.to_string()))
                        .ok_or_else(|| Error::Parse(format!("{what}: expected string entries")))?;
                    parse_rational(&s)
                })
                .collect()
        };
        let lines_v = v
            .get("lines")
            .and_then(|l| l.as_array())
            .filter(|l| l.len() == 4)
            .ok_or_else(|| Error::Parse("expected \"lines\": 4 coefficient triples".into()))?;
        let mut lines = Vec::new();
        for lv in lines_v {
            let c = parse_vec(lv, "line")?;
            if c.len() != 3 {
                return Err(Error::Parse("line: expected 3 coefficients".into()));
            }
            lines.push(Form::linear(&c));
        }
        let a = parse_vec(v.get("a").unwrap_or(&Value::Null), "a")?;
        let b = parse_vec(v.get("b").unwrap_or(&Value::Null), "b")?;
        if a.len() != 4 || b.len() != 4 {
            return Err(Error::Parse("expected 4 entries in \"a\" and \"b\"".into()));
        }
        RobertsData::normalized(
            lines.try_into().unwrap(),
            a.try_into().unwrap(),
            b.try_into().unwrap(),
        )
    }
}

/// Five lines, three-by-three independent, with their ten pairwise
/// intersection points.
#[derive(Clone, Debug)]
pub struct Pentalateral {
    pub lines: [Form; 5],
    pub vertices: Vec<HomPoint>,
}

/// The bihomogeneous determinant with rows `dθ(ξ), dθ(X), dD(X)`:
/// bidegree (1,3) in (`xi` = variables 0..3, `X` = variables 3..6).
pub fn bateman_s(inp: &BatemanInput) -> Result<Form, Error> {
    let rows: Vec<Vec<Form>> = vec![
        (0..3).map(|j| inp.theta.form().partial(j).shift_vars(6, 0)).collect(),
        (0..3).map(|j| inp.theta.form().partial(j).shift_vars(6, 3)).collect(),
        (0..3).map(|j| inp.d_cubic.partial(j).shift_vars(6, 3)).collect(),
    ];
    let s = det_forms(&rows);
    if s.is_zero() {
        return Err(Error::Degenerate(
            "determinant of partials is identically zero".into(),
        ));
    }
    Ok(s)
}

/// Apply the dual conic of `theta` as a differential operator in the `X`
/// variables to the polarized form `M = Delta_xi S`, returning the
/// residual. The identity asserts the residual is the zero polynomial;
/// a nonzero return value is a counterexample certificate.
pub fn differential_identity(inp: &BatemanInput) -> Result<Form, Error> {
    let s = bateman_s(inp)?;
    let m = xi_polar(&s);
    let star = dual_conic(&inp.theta)?;
    Ok(m.apply_operator(star.form(), &[3, 4, 5]))
}

/// Coefficients of `f` as a polynomial in `X2`, ascending; each entry is
/// a form in `X0, X1` (with zero exponent on `X2`).
fn coeffs_in_x2(f: &Form) -> Vec<Form> {
    let d = f.terms().map(|(e, _)| e[2]).max().unwrap_or(0) as usize;
    let mut out = vec![Form::zero(3); d + 1];
    for (e, c) in f.terms() {
        out[e[2] as usize].add_term(vec![e[0], e[1], 0], c.clone());
    }
    out
}

/// Sylvester resultant of two plane curves with respect to `X2`, as a
/// binary form in `(X0, X1)` (two variables).
fn resultant_x2(f: &Form, g: &Form) -> Result<Form, Error> {
    let fc = coeffs_in_x2(f);
    let gc = coeffs_in_x2(g);
    let d = fc.len() - 1;
    let e = gc.len() - 1;
    let project = |h: &Form| -> Form {
        let mut out = Form::zero(2);
        for (ex, c) in h.terms() {
            out.add_term(vec![ex[0], ex[1]], c.clone());
        }
        out
    };
    if d == 0 {
        return Ok(project(&fc[0]).pow(e as u32));
    }
    if e == 0 {
        return Ok(project(&gc[0]).pow(d as u32));
    }
    let n = d + e;
    let mut rows: Vec<Vec<Form>> = Vec::with_capacity(n);
    for i in 0..e {
        let mut row = vec![Form::zero(2); n];
        for (k, c) in fc.iter().enumerate() {
            row[i + d - k] = project(c);
        }
        rows.push(row);
    }
    for i in 0..d {
        let mut row = vec![Form::zero(2); n];
        for (k, c) in gc.iter().enumerate() {
            row[i + e - k] = project(c);
        }
        rows.push(row);
    }
    Ok(det_forms(&rows))
}

/// All rational projective common zeros of two plane curves sharing no
/// component, by eliminating `X2` and back-substituting. Irrational
/// common zeros are silently absent; callers compare counts.
pub fn common_rational_zeros(f: &Form, g: &Form) -> Result<Vec<HomPoint>, Error> {
    let res = resultant_x2(f, g)?;
    if res.is_zero() {
        return Err(Error::Degenerate("the two curves share a component".into()));
    }
    let mut pts: Vec<HomPoint> = Vec::new();
    let mut push = |p: HomPoint| {
        if !pts.iter().any(|q| q.projectively_eq(&p)) {
            pts.push(p);
        }
    };
    let e3 = [Rational::zero(), Rational::zero(), Rational::one()];
    if f.eval(&e3).is_zero() && g.eval(&e3).is_zero() {
        push(HomPoint::from_ints(0, 0, 1));
    }
    let deg = res.homogeneous_degree_in(&[0, 1]).unwrap();
    let bf = BinaryForm::from_form(&res, deg);
    let mut seen: Vec<(Rational, Rational)> = Vec::new();
    for (s0, t0) in bf.rational_roots() {
        if seen.iter().any(|(s, t)| &(&s0 * t) - &(&t0 * s) == Rational::zero()) {
            continue;
        }
        seen.push((s0.clone(), t0.clone()));
        let at = |h: &Form| -> Vec<Rational> {
            coeffs_in_x2(h)
                .iter()
                .map(|c| c.eval(&[s0.clone(), t0.clone(), Rational::zero()]))
                .collect()
        };
        let fu = at(f);
        let gu = at(g);
        let f_zero = fu.iter().all(|c| c.is_zero());
        let g_zero = gu.iter().all(|c| c.is_zero());
        let h = match (f_zero, g_zero) {
            (true, true) => {
                return Err(Error::Degenerate(
                    "a whole line lies on both curves".into(),
                ))
            }
            (true, false) => gu,
            (false, true) => fu,
            (false, false) => univariate_gcd(&fu, &gu),
        };
        for r in univariate_rational_roots(&h) {
            push(HomPoint::new([s0.clone(), t0.clone(), r]));
        }
    }
    Ok(pts)
}

/// The seven common zeros of the three minors, when they are all rational.
pub fn bateman_points(inp: &BatemanInput) -> Result<Config7, Error> {
    let minors = inp.minors();
    if minors.iter().any(|m| m.is_zero()) {
        return Err(Error::Degenerate("a maximal minor vanishes identically".into()));
    }
    let candidates = common_rational_zeros(&minors[0], &minors[1])?;
    let pts: Vec<HomPoint> = candidates
        .into_iter()
        .filter(|p| minors[2].eval(p.coords()).is_zero())
        .collect();
    if pts.len() != 7 {
        return Err(Error::NotRational(format!(
            "found {} rational common zeros of the minors, expected 7",
            pts.len()
        )));
    }
    Config7::new(pts.try_into().unwrap())
}

/// Build the conic and cubic of a four-line decomposition.
pub fn reverse_roberts(r: &RobertsData) -> Result<BatemanInput, Error> {
    let theta = PointConic::from_form(r.theta_form())?;
    if !theta.is_nonsingular() {
        return Err(Error::SingularConic);
    }
    BatemanInput::new(theta, r.d_form())
}

/// The pencil of line conics apolar to both the conic and the cubic:
/// exact kernel of the 4x6 condition matrix, dimension verified to be 2.
pub fn roberts_pencil(inp: &BatemanInput) -> Result<[LineConic; 2], Error> {
    let quads = monomials(3, 2);
    let basis: Vec<Form> = quads
        .iter()
        .map(|m| Form::monomial(3, m, Rational::one()))
        .collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // one condition from the conic: the constant pairing value
    rows.push(
        basis
            .iter()
            .map(|s| apolarity_pair(s, inp.theta.form()).unwrap().coeff(&[0, 0, 0]))
            .collect(),
    );
    // three conditions from the cubic: coefficients of the linear pairing
    let lin = monomials(3, 1);
    let images: Vec<Form> = basis
        .iter()
        .map(|s| apolarity_pair(s, &inp.d_cubic).unwrap())
        .collect();
    for lm in &lin {
        rows.push(images.iter().map(|g| g.coeff(lm)).collect());
    }
    let ker = QMatrix::from_rows(rows).kernel();
    if ker.len() != 2 {
        return Err(Error::Degenerate(format!(
            "apolar line conics form a {}-dimensional space, expected a pencil",
            ker.len()
        )));
    }
    let to_conic = |v: &Vec<Rational>| -> LineConic {
        let mut f = Form::zero(3);
        for (m, c) in quads.iter().zip(v) {
            f.add_term(m.clone(), c.clone());
        }
        LineConic::from_form(f).unwrap()
    };
    Ok([to_conic(&ker[0]), to_conic(&ker[1])])
}

/// Split a symmetric 3x3 matrix of rank at most 2 into the two lines of
/// the degenerate conic it defines (rank 1 gives the same line twice).
fn split_degenerate_conic(m: &QMatrix) -> Result<([Rational; 3], [Rational; 3]), Error> {
    let ker = m.kernel();
    match ker.len() {
        1 => {}
        2 => {
            // rank 1: a double line; any nonzero row is proportional to it
            let row = (0..3)
                .map(|i| [m.at(i, 0).clone(), m.at(i, 1).clone(), m.at(i, 2).clone()])
                .find(|r| r.iter().any(|c| !c.is_zero()))
                .unwrap();
            return Ok((row.clone(), row));
        }
        n => {
            return Err(Error::Degenerate(format!(
                "expected a degenerate conic, kernel dimension {n}"
            )))
        }
    }
    let k: [Rational; 3] = [ker[0][0].clone(), ker[0][1].clone(), ker[0][2].clone()];
    // complete the kernel point to a frame with two basis vectors
    let mut frame: Vec<[Rational; 3]> = Vec::new();
    for i in 0..3 {
        let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
        v[i] = Rational::one();
        if frame.is_empty() {
            if !cross(&k, &v).iter().all(|c| c.is_zero()) {
                frame.push(v);
            }
        } else if !det3(&k, &frame[0], &v).is_zero() {
            frame.push(v);
            break;
        }
    }
    let (p, q) = (&frame[0], &frame[1]);
    let quad = |u: &[Rational; 3], v: &[Rational; 3]| -> Rational {
        let mv = m.mul_vec(v);
        let mut s = Rational::zero();
        for i in 0..3 {
            s += &u[i] * &mv[i];
        }
        s
    };
    let (a, b, c) = (quad(p, p), quad(p, q), quad(q, q));
    // roots of a t^2 + 2 b t u + c u^2 as points y = t p + u q on the conic
    let disc = &(&b * &b) - &(&a * &c);
    let r = rational_sqrt_exact(&disc).ok_or_else(|| {
        Error::NotRational("degenerate pencil member does not split over the rationals".into())
    })?;
    let (y1, y2): ([Rational; 3], [Rational; 3]);
    if !a.is_zero() {
        let mk = |t: Rational| -> [Rational; 3] {
            [
                &(&t * &p[0]) + &(&a * &q[0]),
                &(&t * &p[1]) + &(&a * &q[1]),
                &(&t * &p[2]) + &(&a * &q[2]),
            ]
        };
        y1 = mk(&(-&b) + &r);
        y2 = mk(&(-&b) - &r);
    } else if !b.is_zero() {
        y1 = p.clone();
        y2 = [
            &(&c * &p[0]) - &(&(&b + &b) * &q[0]),
            &(&c * &p[1]) - &(&(&b + &b) * &q[1]),
            &(&c * &p[2]) - &(&(&b + &b) * &q[2]),
        ];
    } else {
        // form is c u^2: double root at y = p
        y1 = p.clone();
        y2 = p.clone();
    }
    let u = cross(&k, &y1);
    let w = cross(&k, &y2);
    // sanity: m is proportional to u w^T + w u^T
    let mut s = QMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            *s.at_mut(i, j) = &(&u[i] * &w[j]) + &(&w[i] * &u[j]);
        }
    }
    let lam = (0..9)
        .map(|t| (t / 3, t % 3))
        .find(|&(i, j)| !s.at(i, j).is_zero())
        .map(|(i, j)| m.at(i, j) / s.at(i, j))
        .ok_or_else(|| Error::Degenerate("degenerate conic split failed".into()))?;
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m.at(i, j), &(s.at(i, j) * &lam), "conic split verification");
        }
    }
    Ok((u, w))
}

/// Recover the four-line decomposition from the pencil of apolar line
/// conics, when its degenerate members are rational.
pub fn roberts_lines(inp: &BatemanInput) -> Result<RobertsData, Error> {
    let pencil = roberts_pencil(inp)?;
    let a1 = pencil[0].matrix();
    let a2 = pencil[1].matrix();
    // degenerate pencil members: rational roots of det(s A1 + t A2)
    let s = Form::variable(2, 0);
    let t = Form::variable(2, 1);
    let entries: Vec<Vec<Form>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| &s.scale(a1.at(i, j)) + &t.scale(a2.at(i, j)))
                .collect()
        })
        .collect();
    let det = det_forms(&entries);
    if det.is_zero() {
        return Err(Error::Degenerate("every pencil member is degenerate".into()));
    }
    let bf = BinaryForm::from_form(&det, 3);
    let mut roots: Vec<(Rational, Rational)> = Vec::new();
    for (s0, t0) in bf.rational_roots() {
        if !roots
            .iter()
            .any(|(s, t)| (&(&s0 * t) - &(&t0 * s)).is_zero())
        {
            roots.push((s0, t0));
        }
    }
    if roots.len() < 2 {
        return Err(Error::NotRational(format!(
            "only {} rational degenerate members in the apolar pencil; recover the pencil itself via the pencil operation",
            roots.len()
        )));
    }
    let member = |s0: &Rational, t0: &Rational| -> QMatrix {
        let mut m = QMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                *m.at_mut(i, j) = &(a1.at(i, j) * s0) + &(a2.at(i, j) * t0);
            }
        }
        m
    };
    let (u1, w1) = split_degenerate_conic(&member(&roots[0].0, &roots[0].1))?;
    let (u2, w2) = split_degenerate_conic(&member(&roots[1].0, &roots[1].1))?;
    // base points of the pencil: pairwise intersections of component lines
    let mut base: Vec<[Rational; 3]> = Vec::new();
    for first in [&u1, &w1] {
        for second in [&u2, &w2] {
            let x = cross(first, second);
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            let on_pencil = |m: &QMatrix| -> bool {
                let mv = m.mul_vec(&x);
                (0..3).map(|i| &x[i] * &mv[i]).sum::<Rational>().is_zero()
            };
            if !(on_pencil(a1) && on_pencil(a2)) {
                continue;
            }
            if !base
                .iter()
                .any(|y| cross(y, &x).iter().all(|c| c.is_zero()))
            {
                base.push(x);
            }
        }
    }
    if base.len() != 4 {
        return Err(Error::Degenerate(format!(
            "expected 4 base points of the apolar pencil, found {}",
            base.len()
        )));
    }
    let lines: Vec<Form> = base.iter().map(|x| Form::linear(x)).collect();
    // coefficients: exact linear solves theta = sum a_k l_k^2, D = sum b_k l_k^3
    let solve = |target: &Form, powers: Vec<Form>, deg: u32| -> Result<Vec<Rational>, Error> {
        let monoms = monomials(3, deg);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for m in &monoms {
            let mut row: Vec<Rational> = powers.iter().map(|p| p.coeff(m)).collect();
            row.push(-target.coeff(m));
            rows.push(row);
        }
        let ker = QMatrix::from_rows(rows).kernel();
        if ker.len() != 1 || ker[0][4].is_zero() {
            return Err(Error::Degenerate(
                "decomposition coefficients are not uniquely determined".into(),
            ));
        }
        let inv = ker[0][4].recip();
        Ok((0..4).map(|k| &ker[0][k] * &inv).collect())
    };
    let squares: Vec<Form> = lines.iter().map(|l| l * l).collect();
    let cubes: Vec<Form> = lines.iter().zip(&squares).map(|(l, s)| l * s).collect();
    let a = solve(inp.theta.form(), squares, 2)?;
    let b = solve(&inp.d_cubic, cubes, 3)?;
    RobertsData::normalized(
        lines.try_into().unwrap(),
        a.try_into().unwrap(),
        b.try_into().unwrap(),
    )
}

/// The closed-form quartic of a four-line decomposition, together with
/// the fifth line `L = -(sum a_k/b_k)^{-2} sum (a_k^2 l_k / b_k)`.
/// The quartic is `L * sum_k prod_{j != k} (b_j l_j) + prod_k (b_k l_k)`.
pub fn luroth_closed_form(r: &RobertsData) -> Result<(Form, Form), Error> {
    if r.b.iter().any(|b| b.is_zero()) {
        return Err(Error::Degenerate("a cubic coefficient b_k is zero".into()));
    }
    let s: Rational = (0..4).map(|k| &r.a[k] / &r.b[k]).sum();
    if s.is_zero() {
        return Err(Error::Degenerate("sum of a_k/b_k vanishes".into()));
    }
    let factor = -(&s * &s).recip();
    let mut l = Form::zero(3);
    for k in 0..4 {
        l = &l + &r.lines[k].scale(&(&(&r.a[k] * &r.a[k]) / &r.b[k]));
    }
    let l = l.scale(&factor);
    if l.is_zero() {
        return Err(Error::Degenerate("the fifth line vanishes identically".into()));
    }
    let scaled: Vec<Form> = (0..4).map(|k| r.lines[k].scale(&r.b[k])).collect();
    let mut sum3 = Form::zero(3);
    let mut prod4 = Form::constant(3, Rational::one());
    for k in 0..4 {
        let mut p = Form::constant(3, Rational::one());
        for (j, f) in scaled.iter().enumerate() {
            if j != k {
                p = &p * f;
            }
        }
        sum3 = &sum3 + &p;
        prod4 = &prod4 * &scaled[k];
    }
    let quartic = &(&l * &sum3) + &prod4;
    if quartic.is_zero() {
        return Err(Error::Degenerate("closed-form quartic vanishes identically".into()));
    }
    Ok((quartic, l))
}

/// Symmetric matrix, with linear-form entries in `Q`, of the polar conic
/// of `Q` with respect to a cubic.
fn polar_conic_matrix(d: &Form) -> Vec<Vec<Form>> {
    let mut out = vec![vec![Form::zero(3); 3]; 3];
    for h in 0..3 {
        let mh = conic_matrix_of_form(&d.partial(h));
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = &out[i][j] + &Form::variable(3, h).scale(mh.at(i, j));
            }
        }
    }
    out
}

/// The branch quartic of the involution defined by `(theta, D)`:
/// `B(Q) = l_Q^T adj(C_Q) l_Q`, the condition that the polar line of `Q`
/// with respect to the conic is tangent to the polar conic of `Q` with
/// respect to the cubic.
pub fn branch_quartic(inp: &BatemanInput) -> Result<Form, Error> {
    // l_Q = 2 A_theta Q: three linear forms
    let at = inp.theta.matrix();
    let ell: Vec<Form> = (0..3)
        .map(|i| {
            let mut f = Form::zero(3);
            for j in 0..3 {
                f = &f + &Form::variable(3, j).scale(&(at.at(i, j) + at.at(i, j)));
            }
            f
        })
        .collect();
    let c = polar_conic_matrix(&inp.d_cubic);
    // adjugate of the form matrix: cofactors, transposed
    let mut adj = vec![vec![Form::zero(3); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let minor: Vec<Vec<Form>> = (0..3)
                .filter(|&r| r != j)
                .map(|r| (0..3).filter(|&s| s != i).map(|s| c[r][s].clone()).collect())
                .collect();
            let cof = det_forms(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { cof } else { -&cof };
        }
    }
    let mut b = Form::zero(3);
    for i in 0..3 {
        for j in 0..3 {
            b = &b + &(&(&ell[i] * &adj[i][j]) * &ell[j]);
        }
    }
    if b.is_zero() {
        return Err(Error::Degenerate("branch quartic vanishes identically".into()));
    }
    Ok(b)
}

/// Image of a plane point under the involution defined by the net of
/// minors: evaluate the three minors. The result lies on the polar lines
/// of the point with respect to both the conic and the cubic.
pub fn geiser_image(inp: &BatemanInput, p: &HomPoint) -> Result<HomPoint, Error> {
    let minors = inp.minors();
    let vals: Vec<Rational> = minors.iter().map(|m| m.eval(p.coords())).collect();
    if vals.iter().all(|v| v.is_zero()) {
        return Err(Error::Degenerate(
            "point is a base point of the net; the involution is undefined there".into(),
        ));
    }
    let q = HomPoint::new([vals[0].clone(), vals[1].clone(), vals[2].clone()]);
    // membership in both polar lines
    let l_theta = inp.theta.polar_line(p);
    let dot: Rational = (0..3).map(|i| &l_theta[i] * &q.coords()[i]).sum();
    assert!(dot.is_zero(), "image off the polar line of the conic");
    let l_cubic = polar(p, &polar(p, &inp.d_cubic));
    assert!(
        l_cubic.eval(q.coords()).is_zero(),
        "image off the polar line of the cubic"
    );
    Ok(q)
}

/// The ten vertices of five lines in general position and the five
/// products-of-four basis quartics of the circumscribed family.
pub fn pentalateral_ops(lines: &[Form; 5]) -> Result<(Pentalateral, [Form; 5]), Error> {
    for l in lines {
        if l.is_zero() || l.homogeneous_degree_in(&[0, 1, 2]) != Some(1) {
            return Err(Error::Degenerate("expected five nonzero linear forms".into()));
        }
    }
    let coords: Vec<[Rational; 3]> = lines.iter().map(line_coords).collect();
    for i in 0..5 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                if det3(&coords[i], &coords[j], &coords[k]).is_zero() {
                    return Err(Error::Degenerate(format!(
                        "lines {}, {}, {} are concurrent or dependent",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let mut vertices = Vec::new();
    for i in 0..5 {
        for j in (i + 1)..5 {
            vertices.push(HomPoint::new(cross(&coords[i], &coords[j])));
        }
    }
    for i in 0..10 {
        for j in (i + 1)..10 {
            if vertices[i].projectively_eq(&vertices[j]) {
                return Err(Error::Degenerate("fewer than 10 distinct vertices".into()));
            }
        }
    }
    let mut basis = Vec::new();
    for k in 0..5 {
        let mut p = Form::constant(3, Rational::one());
        for (j, l) in lines.iter().enumerate() {
            if j != k {
                p = &p * l;
            }
        }
        basis.push(p);
    }
    Ok((
        Pentalateral {
            lines: lines.clone(),
            vertices,
        },
        basis.try_into().unwrap(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config7::{morley_invariant, morley_pfaffian, morley_s, q_invariant};
    use crate::rational::rat_i;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn x(i: usize) -> Form {
        Form::variable(3, i)
    }

    fn unit_conic() -> PointConic {
        PointConic::from_form(
            &(&x(0) * &x(0)) + &(&(&x(1) * &x(1)) + &(&x(2) * &x(2))),
        )
        .unwrap()
    }

    fn xyz() -> Form {
        &(&x(0) * &x(1)) * &x(2)
    }

    fn reference_input() -> BatemanInput {
        BatemanInput::new(unit_conic(), xyz()).unwrap()
    }

    fn random_cubic(rng: &mut StdRng) -> Form {
        let mut d = Form::zero(3);
        for m in monomials(3, 3) {
            d.add_term(m, rat_i(rng.gen_range(-5..6)));
        }
        d
    }

    fn random_input(rng: &mut StdRng) -> BatemanInput {
        loop {
            let mut t = Form::zero(3);
            for m in monomials(3, 2) {
                t.add_term(m, rat_i(rng.gen_range(-5..6)));
            }
            let Ok(theta) = PointConic::from_form(t) else { continue };
            if !theta.is_nonsingular() {
                continue;
            }
            let d = random_cubic(rng);
            if let Ok(inp) = BatemanInput::new(theta, d) {
                return inp;
            }
        }
    }

    fn random_roberts(rng: &mut StdRng) -> RobertsData {
        loop {
            let lines: Vec<Form> = (0..3)
                .map(|_| {
                    Form::linear(&[
                        rat_i(rng.gen_range(-4..5)),
                        rat_i(rng.gen_range(-4..5)),
                        rat_i(rng.gen_range(1..5)),
                    ])
                })
                .collect();
            let fourth = -&(&(&lines[0] + &lines[1]) + &lines[2]);
            let mut all = lines;
            all.push(fourth);
            let a: Vec<Rational> = (0..4).map(|_| rat_i(rng.gen_range(1..7))).collect();
            let b: Vec<Rational> = (0..4)
                .map(|_| {
                    let v = rng.gen_range(-6..6);
                    rat_i(if v == 0 { 1 } else { v })
                })
                .collect();
            if let Ok(r) = RobertsData::new(
                all.try_into().unwrap(),
                a.try_into().unwrap(),
                b.try_into().unwrap(),
            ) {
                return r;
            }
        }
    }

    #[test]
    fn minors_of_reference_input() {
        let inp = reference_input();
        let m = inp.minors();
        let e0 = (&x(0) * &(&(&x(1) * &x(1)) - &(&x(2) * &x(2)))).scale(&rat_i(2));
        let e1 = (&x(1) * &(&(&x(2) * &x(2)) - &(&x(0) * &x(0)))).scale(&rat_i(2));
        let e2 = (&x(2) * &(&(&x(0) * &x(0)) - &(&x(1) * &x(1)))).scale(&rat_i(2));
        assert_eq!(m[0], e0);
        assert_eq!(m[1], e1);
        assert_eq!(m[2], e2);
    }

    #[test]
    fn bateman_s_vanishes_on_the_points_and_diagonal() {
        let inp = reference_input();
        let s = bateman_s(&inp).unwrap();
        // diagonal restriction: repeated rows
        let diag: Vec<Form> = (0..6).map(|i| Form::variable(6, 3 + (i % 3))).collect();
        assert!(s.substitute(&diag).is_zero());
        // vanishes at each of the 7 points for every xi
        let z = bateman_points(&inp).unwrap();
        for p in z.points() {
            assert!(crate::config7::eval_in_x(&s, p.coords()).is_zero());
        }
    }

    #[test]
    fn bateman_s_matches_configuration_route() {
        let inp = reference_input();
        let s_sym = bateman_s(&inp).unwrap();
        let z = bateman_points(&inp).unwrap();
        let s_pts = morley_s(&z).unwrap();
        assert!(s_sym.is_proportional_to(&s_pts));
    }

    #[test]
    fn differential_identity_on_random_pairs() {
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..10 {
            let inp = random_input(&mut rng);
            match differential_identity(&inp) {
                Ok(res) => assert!(res.is_zero()),
                Err(Error::Degenerate(_)) => {} // identically-zero determinant pair
                Err(e) => panic!("unexpected error: {e}"),
            }
        }
    }

    #[test]
    fn differential_identity_symbolic_coefficients() {
        // theta = X0^2 + 2 X1 X2 fixed, D with 10 symbolic coefficients:
        // 16 variables (xi: 0..3, X: 3..6, coefficients: 6..16)
        let nv = 16;
        let cubs = monomials(3, 3);
        let var = |i: usize| Form::variable(nv, i);
        // rows of the determinant
        let row_theta_xi = vec![var(0).scale(&rat_i(2)), var(2).scale(&rat_i(2)), var(1).scale(&rat_i(2))];
        let row_theta_x = vec![var(3).scale(&rat_i(2)), var(5).scale(&rat_i(2)), var(4).scale(&rat_i(2))];
        let mut row_d = vec![Form::zero(nv); 3];
        for (mi, m) in cubs.iter().enumerate() {
            let beta = var(6 + mi);
            let mono3 = Form::monomial(3, m, Rational::one());
            for i in 0..3 {
                let part = mono3.partial(i).shift_vars(nv, 3);
                row_d[i] = &row_d[i] + &(&beta * &part);
            }
        }
        let s = det_forms(&vec![row_theta_xi, row_theta_x, row_d]);
        let m = xi_polar(&s);
        let theta = PointConic::from_form(
            &(&x(0) * &x(0)) + &(&x(1) * &x(2)).scale(&rat_i(2)),
        )
        .unwrap();
        let star = dual_conic(&theta).unwrap();
        let residual = m.apply_operator(star.form(), &[3, 4, 5]);
        assert!(residual.is_zero());
        // falsifiability: perturbing one coefficient of M breaks the identity
        let mut bad = m.clone();
        let mut e = vec![0u32; nv];
        e[0] = 2;
        e[3] = 2;
        bad.add_term(e, rat_i(1));
        assert!(!bad.apply_operator(star.form(), &[3, 4, 5]).is_zero());
    }

    #[test]
    fn bateman_points_reference() {
        let z = bateman_points(&reference_input()).unwrap();
        let expect = [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 1),
            (1, -1, 1),
            (1, 1, -1),
            (-1, 1, 1),
        ];
        for (a, b, c) in expect {
            let p = HomPoint::from_ints(a, b, c);
            assert!(z.points().iter().any(|q| q.projectively_eq(&p)));
        }
        // no six on a conic
        assert!(z.six_on_conic_indices().is_empty());
    }

    #[test]
    fn bateman_points_diagonal_family() {
        let (m, n) = (2i64, 3i64);
        let theta = PointConic::from_form(
            &(&x(0) * &x(0))
                + &(&(&x(1) * &x(1)).scale(&rat_i(m * m)) + &(&x(2) * &x(2)).scale(&rat_i(n * n))),
        )
        .unwrap();
        let inp = BatemanInput::new(theta, xyz()).unwrap();
        let z = bateman_points(&inp).unwrap();
        for (a, b, c) in [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (m * n, n, m),
            (m * n, -n, m),
            (m * n, n, -m),
            (m * n, -n, -m),
        ] {
            let p = HomPoint::from_ints(a, b, c);
            assert!(z.points().iter().any(|q| q.projectively_eq(&p)));
        }
        // the pipeline downstream: pfaffian and invariant vanish exactly
        assert!(morley_pfaffian(&z).unwrap().is_zero());
        assert!(morley_invariant(&z).unwrap().is_zero());
    }

    #[test]
    fn bateman_points_irrational_family_rejected() {
        // m^2 = 2 has no rational square root: the four off-axis points
        // are irrational
        let theta = PointConic::from_form(
            &(&x(0) * &x(0)) + &(&(&x(1) * &x(1)).scale(&rat_i(2)) + &(&x(2) * &x(2)).scale(&rat_i(9))),
        )
        .unwrap();
        let inp = BatemanInput::new(theta, xyz()).unwrap();
        match bateman_points(&inp) {
            Err(Error::NotRational(_)) => {}
            other => panic!("expected NotRational, got {other:?}"),
        }
    }

    #[test]
    fn reverse_roberts_and_pencil() {
        let mut rng = StdRng::seed_from_u64(5);
        let r = random_roberts(&mut rng);
        let inp = reverse_roberts(&r).unwrap();
        // line conics vanishing on the four dual points are apolar to both
        let pencil = roberts_pencil(&inp).unwrap();
        for member in &pencil {
            assert!(apolarity_pair(member.form(), inp.theta.form()).unwrap().is_zero());
            assert!(apolarity_pair(member.form(), &inp.d_cubic).unwrap().is_zero());
        }
        // line pairs through the four dual points are apolar to both:
        // the pair joining {l_i, l_j} and {the other two}, as the conic
        // with matrix u w^T + w u^T
        let c: Vec<[Rational; 3]> = r.lines.iter().map(line_coords).collect();
        for (i, j, k, h) in [(0usize, 1usize, 2usize, 3usize), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let u = cross(&c[i], &c[j]);
            let w = cross(&c[k], &c[h]);
            let mut f = Form::zero(3);
            for h in 0..3 {
                for k in 0..3 {
                    let mut e = vec![0u32; 3];
                    e[h] += 1;
                    e[k] += 1;
                    f.add_term(e, &u[h] * &w[k]);
                }
            }
            // f vanishes at all four dual points, hence is apolar to both
            assert!(apolarity_pair(&f, inp.theta.form()).unwrap().is_zero());
            assert!(apolarity_pair(&f, &inp.d_cubic).unwrap().is_zero());
        }
    }

    #[test]
    fn roberts_round_trip() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut done = 0;
        while done < 5 {
            let r = random_roberts(&mut rng);
            let Ok(inp) = reverse_roberts(&r) else { continue };
            let rec = match roberts_lines(&inp) {
                Ok(rec) => rec,
                Err(Error::Degenerate(_)) | Err(Error::NotRational(_)) => continue,
                Err(e) => panic!("unexpected: {e}"),
            };
            // decomposition reproduces the same conic and cubic
            assert_eq!(rec.theta_form(), r.theta_form());
            assert_eq!(rec.d_form(), r.d_form());
            // lines match the input up to permutation and one global scale
            let mut mu: Option<Rational> = None;
            for l in &rec.lines {
                let j = (0..4)
                    .find(|&j| l.is_proportional_to(&r.lines[j]))
                    .expect("recovered line matches an input line");
                let (e, c) = l.terms().next().unwrap();
                let factor = c / &r.lines[j].coeff(e);
                match &mu {
                    None => mu = Some(factor),
                    Some(m) => assert_eq!(&factor, m),
                }
                // coefficients transform with the square and cube of the scale
                let k = rec.lines.iter().position(|q| q == l).unwrap();
                let m = mu.as_ref().unwrap();
                assert_eq!(&rec.a[k] * &(m * m), r.a[j]);
                assert_eq!(&rec.b[k] * &(&(m * m) * m), r.b[j]);
            }
            done += 1;
        }
    }

    #[test]
    fn roberts_lines_irrational_case() {
        // theta and D decomposed by lines conjugate over Q(sqrt(2)):
        // theta = X0^2 - 2 X1^2 (+ X2^2), built so the pencil's degenerate
        // members need sqrt(2)
        let theta = PointConic::from_form(
            &(&(&x(0) * &x(0)) - &(&x(1) * &x(1)).scale(&rat_i(2))) + &(&x(2) * &x(2)),
        )
        .unwrap();
        let d = &(&x(0) * &x(0)) * &x(1);
        let inp = BatemanInput::new(theta, d).unwrap();
        match roberts_lines(&inp) {
            Err(Error::NotRational(_)) | Err(Error::Degenerate(_)) => {}
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn luroth_quartic_and_pentalateral() {
        let mut rng = StdRng::seed_from_u64(31);
        let mut done = 0;
        while done < 5 {
            let r = random_roberts(&mut rng);
            let Ok((quartic, fifth)) = luroth_closed_form(&r) else { continue };
            let all_lines = [
                r.lines[0].clone(),
                r.lines[1].clone(),
                r.lines[2].clone(),
                r.lines[3].clone(),
                fifth.clone(),
            ];
            let Ok((penta, _basis)) = pentalateral_ops(&all_lines) else { continue };
            for v in &penta.vertices {
                assert!(quartic.eval(v.coords()).is_zero());
            }
            // proportional to the tangency branch quartic
            let Ok(inp) = reverse_roberts(&r) else { continue };
            let bq = branch_quartic(&inp).unwrap();
            assert!(quartic.is_proportional_to(&bq));
            done += 1;
        }
    }

    #[test]
    fn luroth_degenerate_symmetric_case() {
        // a = b = (1,1,1,1): the fifth line is -(1/16) sum l_k = 0
        let lines = [
            x(0),
            x(1),
            x(2),
            -&(&(&x(0) + &x(1)) + &x(2)),
        ];
        let ones = [rat_i(1), rat_i(1), rat_i(1), rat_i(1)];
        let r = RobertsData::new(lines, ones.clone(), ones).unwrap();
        match luroth_closed_form(&r) {
            Err(Error::Degenerate(_)) => {}
            other => panic!("expected degenerate, got {other:?}"),
        }
    }

    #[test]
    fn branch_quartic_homogeneity_and_tangency() {
        let mut rng = StdRng::seed_from_u64(47);
        let r = random_roberts(&mut rng);
        let inp = reverse_roberts(&r).unwrap();
        let b = branch_quartic(&inp).unwrap();
        assert_eq!(b.homogeneous_degree_in(&[0, 1, 2]), Some(4));
        // tangency at a known point of the quartic: a pentalateral vertex
        let (quartic, fifth) = luroth_closed_form(&r).unwrap();
        assert!(quartic.is_proportional_to(&b));
        let q = HomPoint::new(cross(&line_coords(&r.lines[0]), &line_coords(&fifth)));
        assert!(b.eval(q.coords()).is_zero());
        // restrict the polar conic of q to the polar line of q: the binary
        // quadratic has a double root (zero discriminant)
        let l = inp.theta.polar_line(&q);
        let lker = QMatrix::from_rows(vec![l.to_vec()]).kernel();
        assert_eq!(lker.len(), 2);
        let par: Vec<Form> = (0..3)
            .map(|i| {
                &Form::variable(2, 0).scale(&lker[0][i]) + &Form::variable(2, 1).scale(&lker[1][i])
            })
            .collect();
        let pconic = polar(&q, &inp.d_cubic);
        let restricted = pconic.substitute(&par);
        let bf = BinaryForm::from_form(&restricted, 2);
        let disc = &(&bf.coeffs[1] * &bf.coeffs[1])
            - &(&(&bf.coeffs[0] * &bf.coeffs[2]) * &rat_i(4));
        assert!(disc.is_zero());
    }

    #[test]
    fn geiser_image_reference_point() {
        let inp = reference_input();
        let p = HomPoint::from_ints(1, 1, 0);
        let q = geiser_image(&inp, &p).unwrap();
        assert!(q.projectively_eq(&HomPoint::from_ints(1, -1, 0)));
        // base points rejected
        assert!(geiser_image(&inp, &HomPoint::from_ints(1, 1, 1)).is_err());
    }

    #[test]
    fn geiser_involution_partner_consistency() {
        let inp = reference_input();
        let p = HomPoint::from_ints(1, 2, 3);
        let q = geiser_image(&inp, &p).unwrap();
        // the partner of p: the ninth base point of the pencil of net
        // cubics through p
        let minors = inp.minors();
        let vals: Vec<Rational> = minors.iter().map(|m| m.eval(p.coords())).collect();
        let ker = QMatrix::from_rows(vec![vals]).kernel();
        assert_eq!(ker.len(), 2);
        let member = |c: &Vec<Rational>| -> Form {
            let mut f = Form::zero(3);
            for j in 0..3 {
                f = &f + &minors[j].scale(&c[j]);
            }
            f
        };
        let (u, v) = (member(&ker[0]), member(&ker[1]));
        let zeros = common_rational_zeros(&u, &v).unwrap();
        let z = bateman_points(&inp).unwrap();
        let partner = zeros
            .iter()
            .find(|y| !y.projectively_eq(&p) && !z.points().iter().any(|b| b.projectively_eq(y)))
            .expect("ninth base point");
        let q2 = geiser_image(&inp, partner).unwrap();
        assert!(q2.projectively_eq(&q));
    }

    #[test]
    fn pentalateral_basics() {
        let lines = [
            x(0),
            x(1),
            x(2),
            Form::linear(&[rat_i(1), rat_i(1), rat_i(1)]),
            Form::linear(&[rat_i(1), rat_i(2), rat_i(3)]),
        ];
        let (penta, basis) = pentalateral_ops(&lines).unwrap();
        assert_eq!(penta.vertices.len(), 10);
        for q in &basis {
            for v in &penta.vertices {
                assert!(q.eval(v.coords()).is_zero());
            }
        }
        // weighted sum of reciprocals, cleared of denominators, lies in the span
        let weights = [rat_i(2), rat_i(-3), rat_i(5), rat_i(7), rat_i(1)];
        let mut target = Form::zero(3);
        for k in 0..5 {
            target = &target + &basis[k].scale(&weights[k]);
        }
        let monoms = monomials(3, 4);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for m in &monoms {
            let mut row: Vec<Rational> = basis.iter().map(|bq| bq.coeff(m)).collect();
            row.push(-target.coeff(m));
            rows.push(row);
        }
        let ker = QMatrix::from_rows(rows).kernel();
        assert_eq!(ker.len(), 1);
        let inv = ker[0][5].recip();
        for k in 0..5 {
            assert_eq!(&ker[0][k] * &inv, weights[k]);
        }
        // concurrent triple rejected
        let bad = [
            x(0),
            x(1),
            &x(0) + &x(1),
            Form::linear(&[rat_i(1), rat_i(1), rat_i(1)]),
            Form::linear(&[rat_i(1), rat_i(2), rat_i(3)]),
        ];
        assert!(pentalateral_ops(&bad).is_err());
    }

    #[test]
    fn roberts_data_serialization() {
        let mut rng = StdRng::seed_from_u64(3);
        let r = random_roberts(&mut rng);
        let back = RobertsData::from_json(&r.to_json()).unwrap();
        assert_eq!(back.theta_form(), r.theta_form());
        assert_eq!(back.d_form(), r.d_form());
        // unnormalized input gets normalized to the same conic and cubic
        let denorm = RobertsData {
            lines: [
                r.lines[0].scale(&rat_i(2)),
                r.lines[1].clone(),
                r.lines[2].clone(),
                r.lines[3].clone(),
            ],
            a: [
                &r.a[0] / &rat_i(4),
                r.a[1].clone(),
                r.a[2].clone(),
                r.a[3].clone(),
            ],
            b: [
                &r.b[0] / &rat_i(8),
                r.b[1].clone(),
                r.b[2].clone(),
                r.b[3].clone(),
            ],
        };
        let renorm = RobertsData::from_json(&denorm.to_json()).unwrap();
        assert_eq!(renorm.theta_form(), r.theta_form());
        assert_eq!(renorm.d_form(), r.d_form());
    }

    #[test]
    fn reference_q_values_nonzero() {
        // complementary six-tuples of the reference configuration are
        // never on a conic
        let z = bateman_points(&reference_input()).unwrap();
        for i in 0..7 {
            let rest: Vec<HomPoint> = (0..7)
                .filter(|&j| j != i)
                .map(|j| z.points()[j].clone())
                .collect();
            assert!(!q_invariant(&rest.try_into().unwrap()).is_zero());
        }
    }
}
