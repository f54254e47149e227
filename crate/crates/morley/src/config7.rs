//! Everything attached to a labeled configuration of seven plane points:
//! the six-point bracket invariant, the net of cubics, the bihomogeneous
//! form `S`, its skew coefficient matrix and pfaffian, the normalized
//! invariant (computed two ways), the seventh-point cubic, the sixth
//! points, and the Jacobian sextic of the net.
//!
//! Bihomogeneous objects live in a single six-variable ring: variables
//! `0..3` are the dual point `xi`, variables `3..6` are `X`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::apolarity::{bracket, cross, cubic_through_apolar, parametrize_conic, HomPoint, PointConic};
use crate::error::Error;
use crate::form::{det_forms, monomials, Form};
use crate::matrix::QMatrix;
use crate::rational::Rational;

/// Seven labeled, pairwise distinct points of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config7 {
    points: [HomPoint; 7],
}

/// Basis of the three-dimensional space of cubics through the seven points.
#[derive(Clone, Debug)]
pub struct CubicNet {
    pub basis: [Form; 3],
}

/// A 2x3 presentation matrix for the ideal of the seven points: a row of
/// linear forms and a row of quadratic forms whose signed maximal minors
/// span the cubic net.
#[derive(Clone, Debug)]
pub struct HilbertBurchMatrix {
    pub linear: [Form; 3],
    pub quadratic: [Form; 3],
}

impl HilbertBurchMatrix {
    /// Signed maximal minors, in the order matching the net basis they span.
    pub fn minors(&self) -> [Form; 3] {
        let l = &self.linear;
        let q = &self.quadratic;
        [
            &(&l[1] * &q[2]) - &(&l[2] * &q[1]),
            &(&l[2] * &q[0]) - &(&l[0] * &q[2]),
            &(&l[0] * &q[1]) - &(&l[1] * &q[0]),
        ]
    }
}

/// The full package computed from a configuration.
#[derive(Clone, Debug)]
pub struct MorleyData {
    /// bidegree-(1,3) form in (xi, X), canonically scaled
    pub s: Form,
    /// 6x6 skew coefficient matrix of the polarized form
    pub n: QMatrix,
    /// pfaffian of `n`
    pub f: Rational,
    /// the six-point invariant of each complementary six-tuple
    pub q_values: [Rational; 7],
    /// `f` divided by the product of the `q_values`, when that product is nonzero
    pub psi: Option<Rational>,
}

impl Config7 {
    pub fn new(points: [HomPoint; 7]) -> Result<Self, Error> {
        for i in 0..7 {
            for j in (i + 1)..7 {
                if points[i].projectively_eq(&points[j]) {
                    return Err(Error::Degenerate(format!(
                        "points {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Config7 { points })
    }

    pub fn points(&self) -> &[HomPoint; 7] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &HomPoint {
        &self.points[i]
    }

    /// Rank of the 7x6 matrix of degree-2 monomials at the points.
    pub fn veronese_rank(&self) -> usize {
        let monoms = monomials(3, 2);
        let rows = self
            .points
            .iter()
            .map(|p| monoms.iter().map(|m| eval_monomial(m, p.coords())).collect())
            .collect();
        QMatrix::from_rows(rows).rank()
    }

    /// All seven points lie on one conic.
    pub fn all_on_conic(&self) -> bool {
        self.veronese_rank() < 6
    }

    /// Indices `i` such that the six points other than `P_{i+1}` lie on a conic.
    pub fn six_on_conic_indices(&self) -> Vec<usize> {
        (0..7)
            .filter(|&i| self.q_value(i).is_zero())
            .collect()
    }

    /// The six-point invariant of the complement of point `i`, the six
    /// remaining points taken in increasing label order.
    pub fn q_value(&self, i: usize) -> Rational {
        let rest: Vec<HomPoint> = (0..7)
            .filter(|&j| j != i)
            .map(|j| self.points[j].clone())
            .collect();
        q_invariant(&rest.try_into().unwrap())
    }

    pub fn q_values(&self) -> [Rational; 7] {
        let v: Vec<Rational> = (0..7).map(|i| self.q_value(i)).collect();
        v.try_into().unwrap()
    }

    pub fn permuted(&self, perm: &[usize; 7]) -> Config7 {
        let pts: Vec<HomPoint> = perm.iter().map(|&i| self.points[i].clone()).collect();
        Config7 {
            points: pts.try_into().unwrap(),
        }
    }

    pub fn with_scaled_point(&self, i: usize, lambda: &Rational) -> Config7 {
        let mut pts = self.points.clone();
        pts[i] = pts[i].scale(lambda);
        Config7 { points: pts }
    }

    pub fn to_json(&self) -> Value {
        json!({ "points": self.points.iter().map(|p| p.to_json()).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Config7, Error> {
        let arr = v
            .get("points")
            .and_then(|p| p.as_array())
            .filter(|a| a.len() == 7)
            .ok_or_else(|| Error::Parse("configuration: expected \"points\": 7 entries".into()))?;
        let pts: Result<Vec<HomPoint>, Error> = arr.iter().map(HomPoint::from_json).collect();
        Config7::new(pts?.try_into().unwrap())
    }

    fn require_not_on_conic(&self) -> Result<(), Error> {
        if self.all_on_conic() {
            return Err(Error::Degenerate("all seven points lie on a conic".into()));
        }
        Ok(())
    }
}

pub fn eval_monomial(exps: &[u32], x: &[Rational; 3]) -> Rational {
    let mut r = Rational::one();
    for (i, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            r *= &x[i];
        }
    }
    r
}

/// The degree-(2,2,2,2,2,2) bracket invariant of six labeled points that
/// vanishes exactly when they lie on a conic:
/// `|134||156||235||246| - |135||146||234||256|` (1-based labels).
pub fn q_invariant(p: &[HomPoint; 6]) -> Rational {
    let b = |i: usize, j: usize, k: usize| bracket(&p[i - 1], &p[j - 1], &p[k - 1]);
    &(&(&b(1, 3, 4) * &b(1, 5, 6)) * &(&b(2, 3, 5) * &b(2, 4, 6)))
        - &(&(&b(1, 3, 5) * &b(1, 4, 6)) * &(&b(2, 3, 4) * &b(2, 5, 6)))
}

/// Exact kernel basis of the 7x10 evaluation matrix of cubic monomials.
pub fn cubic_net(z: &Config7) -> Result<CubicNet, Error> {
    z.require_not_on_conic()?;
    let monoms = monomials(3, 3);
    let rows = z
        .points
        .iter()
        .map(|p| monoms.iter().map(|m| eval_monomial(m, p.coords())).collect())
        .collect();
    let ker = QMatrix::from_rows(rows).kernel();
    if ker.len() != 3 {
        return Err(Error::Degenerate(format!(
            "space of cubics through the points has dimension {}",
            ker.len()
        )));
    }
    let basis: Vec<Form> = ker
        .iter()
        .map(|v| {
            let mut f = Form::zero(3);
            for (m, c) in monoms.iter().zip(v) {
                f.add_term(m.clone(), c.clone());
            }
            f
        })
        .collect();
    Ok(CubicNet {
        basis: basis.try_into().unwrap(),
    })
}

/// The 30 coefficients of `S`, canonically scaled: the signed maximal
/// minors of the 29x30 condition matrix built in a fixed row order.
///
/// Unknown `j*10 + m` is the coefficient of `xi_j * (cubic monomial m)`.
/// Rows: the 15 coefficients of the restriction to the diagonal `xi = X`
/// (quartic monomials in the fixed order), then for each point, in label
/// order, the two evaluation conditions that remain after dropping the
/// one indexed by the first nonzero coordinate `c`, taken in the cyclic
/// order `c+1, c+2 (mod 3)` with the second of the pair divided by that
/// coordinate. The cyclic order (rather than increasing index order) is
/// what keeps the scaling consistent across branch choices: the three
/// evaluation rows satisfy one linear relation with coefficients
/// `x_0, x_1, x_2` modulo the diagonal rows, so swapping which row is
/// dropped changes every maximal minor by the orientation of the
/// retained pair.
fn morley_coefficients(z: &Config7) -> Result<Vec<Rational>, Error> {
    z.require_not_on_conic()?;
    let cubs = monomials(3, 3);
    let quarts = monomials(3, 4);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(29);
    for mu in &quarts {
        let mut row = vec![Rational::zero(); 30];
        for j in 0..3 {
            for (mi, m) in cubs.iter().enumerate() {
                let mut e = m.clone();
                e[j] += 1;
                if &e == mu {
                    row[j * 10 + mi] = Rational::one();
                }
            }
        }
        rows.push(row);
    }
    for p in &z.points {
        let coords = p.coords();
        let c = (0..3).find(|&i| !coords[i].is_zero()).unwrap();
        let retained = [(c + 1) % 3, (c + 2) % 3];
        for (pos, &j) in retained.iter().enumerate() {
            let mut row = vec![Rational::zero(); 30];
            for (mi, m) in cubs.iter().enumerate() {
                let mut val = eval_monomial(m, coords);
                if pos == 1 {
                    val /= &coords[c];
                }
                row[j * 10 + mi] = val;
            }
            rows.push(row);
        }
    }
    let mat = QMatrix::from_rows(rows);
    let ker = mat.kernel();
    if ker.len() != 1 {
        return Err(Error::Degenerate(format!(
            "condition matrix kernel has dimension {}",
            ker.len()
        )));
    }
    let v = &ker[0];
    let k = (0..30).find(|&k| !v[k].is_zero()).unwrap();
    let d = mat.drop_column(k).det()?;
    let target = if k % 2 == 0 { d } else { -d };
    debug_assert!(!target.is_zero());
    let scale = &target / &v[k];
    Ok(v.iter().map(|c| c * &scale).collect())
}

/// The canonically scaled bihomogeneous form `S(xi, X)` of bidegree (1,3):
/// the unique (up to the canonical Cramer scaling) form, linear in `xi`,
/// cubic in `X`, vanishing identically on the diagonal and at every
/// configuration point for every `xi`.
pub fn morley_s(z: &Config7) -> Result<Form, Error> {
    let v = morley_coefficients(z)?;
    let cubs = monomials(3, 3);
    let mut s = Form::zero(6);
    for j in 0..3 {
        for (mi, m) in cubs.iter().enumerate() {
            let mut e = vec![0u32; 6];
            e[j] += 1;
            for i in 0..3 {
                e[3 + i] = m[i];
            }
            s.add_term(e, v[j * 10 + mi].clone());
        }
    }
    if s.is_zero() {
        return Err(Error::Degenerate("bihomogeneous form is identically zero".into()));
    }
    Ok(s)
}

/// Polarization in the `xi` direction of a bihomogeneous form with `xi`
/// in variables `0..3` and `X` in variables `3..6`:
/// `sum_i xi_i * d/dX_i`. Extra variables (symbolic coefficients, say)
/// ride along untouched.
pub fn xi_polar(f: &Form) -> Form {
    let n = f.nvars();
    let mut out = Form::zero(n);
    for i in 0..3 {
        out = &out + &(&Form::variable(n, i) * &f.partial(3 + i));
    }
    out
}

/// Substitute a concrete value for `xi`, leaving a form in `X` alone
/// (returned in three variables).
pub fn eval_in_xi(f: &Form, xi: &[Rational; 3]) -> Form {
    let mut out = Form::zero(3);
    for (e, c) in f.terms() {
        let factor = eval_monomial(&e[..3], xi);
        out.add_term(e[3..].to_vec(), c * &factor);
    }
    out
}

/// Substitute a concrete value for `X`, leaving a form in `xi`.
pub fn eval_in_x(f: &Form, x: &[Rational; 3]) -> Form {
    let mut out = Form::zero(3);
    for (e, c) in f.terms() {
        let factor = eval_monomial(&e[3..], x);
        out.add_term(e[..3].to_vec(), c * &factor);
    }
    out
}

/// Coefficient matrix of the bidegree-(2,2) polarized form in the fixed
/// degree-2 monomial bases; skewness is a structural guarantee and its
/// violation is a hard failure.
pub fn skew_matrix_of(s: &Form) -> QMatrix {
    let m = xi_polar(s);
    let basis = monomials(3, 2);
    let mut n = QMatrix::zeros(6, 6);
    for (h, mh) in basis.iter().enumerate() {
        for (k, mk) in basis.iter().enumerate() {
            let e: Vec<u32> = mh.iter().chain(mk.iter()).cloned().collect();
            *n.at_mut(h, k) = m.coeff(&e);
        }
    }
    assert!(n.is_skew(), "polarized coefficient matrix is not skew");
    n
}

pub fn morley_matrix(z: &Config7) -> Result<QMatrix, Error> {
    Ok(skew_matrix_of(&morley_s(z)?))
}

pub fn morley_pfaffian(z: &Config7) -> Result<Rational, Error> {
    morley_matrix(z)?.pfaffian()
}

/// The normalized invariant as the exact quotient of the pfaffian by the
/// product of the seven complementary six-point invariants. Fails when
/// six of the points lie on a conic; use the permutation-sum route then.
pub fn morley_invariant(z: &Config7) -> Result<Rational, Error> {
    let q = z.q_values();
    let mut prod = Rational::one();
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            return Err(Error::Degenerate(format!(
                "six points (all but point {}) lie on a conic; the quotient form of the invariant is undefined",
                i + 1
            )));
        }
        prod *= qi;
    }
    Ok(&morley_pfaffian(z)? / &prod)
}

/// The seven triples of the line arrangement used in the symbolic
/// expression of the invariant (0-based labels).
const FANO_LINES: [[usize; 3]; 7] = [
    [0, 3, 1],
    [1, 4, 2],
    [2, 5, 0],
    [0, 6, 4],
    [1, 6, 5],
    [2, 6, 3],
    [3, 4, 5],
];

/// Visit every permutation of `0..7` along with its parity (`true` = even),
/// using the minimal-swap enumeration.
fn for_each_perm7(mut f: impl FnMut(&[usize; 7], bool)) {
    let mut a = [0usize, 1, 2, 3, 4, 5, 6];
    let mut c = [0usize; 7];
    let mut even = true;
    f(&a, even);
    let mut i = 0usize;
    while i < 7 {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            f(&a, even);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// The skew permutation-sum form of the invariant:
/// `(1/168) * sum over all 5040 permutations of sgn * product of the
/// seven line brackets`. Defined for every seven-tuple; vanishes whenever
/// two points coincide.
pub fn morley_invariant_fano(p: &[HomPoint; 7]) -> Rational {
    // all ordered triple brackets, indexed a*49 + b*7 + c
    let mut table = vec![Rational::zero(); 343];
    for a in 0..7 {
        for b in 0..7 {
            for c in 0..7 {
                if a != b && b != c && a != c {
                    table[a * 49 + b * 7 + c] = bracket(&p[a], &p[b], &p[c]);
                }
            }
        }
    }
    let mut sum = Rational::zero();
    for_each_perm7(|sigma, even| {
        let mut prod = Rational::one();
        for line in &FANO_LINES {
            let t = &table[sigma[line[0]] * 49 + sigma[line[1]] * 7 + sigma[line[2]]];
            if t.is_zero() {
                return;
            }
            prod *= t;
        }
        if even {
            sum += prod;
        } else {
            sum -= prod;
        }
    });
    sum / Rational::from_integer(168.into())
}

/// The permutation-sum invariant with the seventh argument left symbolic:
/// a cubic form in `X`, the curve of possible seventh points.
pub fn fano_symbolic(p: &[HomPoint; 6]) -> Form {
    // scalar brackets among the six concrete points
    let mut table = vec![Rational::zero(); 343];
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                if a != b && b != c && a != c {
                    table[a * 49 + b * 7 + c] = bracket(&p[a], &p[b], &p[c]);
                }
            }
        }
    }
    // |p_a p_b X| as a linear form, and its negative for the swapped slots
    let mut lines: Vec<Option<Form>> = vec![None; 49];
    for a in 0..6 {
        for b in 0..6 {
            if a != b {
                lines[a * 7 + b] = Some(Form::linear(&cross(p[a].coords(), p[b].coords())));
            }
        }
    }
    let mut sum = Form::zero(3);
    for_each_perm7(|sigma, even| {
        let mut scalar = Rational::one();
        let mut linear_factors: Vec<Form> = Vec::with_capacity(3);
        for line in &FANO_LINES {
            let (i, j, k) = (sigma[line[0]], sigma[line[1]], sigma[line[2]]);
            if i == 6 {
                // |X p_j p_k| = |p_j p_k X|
                linear_factors.push(lines[j * 7 + k].clone().unwrap());
            } else if j == 6 {
                // |p_i X p_k| = -|p_i p_k X|
                linear_factors.push(-&lines[i * 7 + k].clone().unwrap());
            } else if k == 6 {
                linear_factors.push(lines[i * 7 + j].clone().unwrap());
            } else {
                let t = &table[i * 49 + j * 7 + k];
                if t.is_zero() {
                    return;
                }
                scalar *= t;
            }
        }
        if scalar.is_zero() {
            return;
        }
        debug_assert_eq!(linear_factors.len(), 3);
        let cubic = &(&linear_factors[0] * &linear_factors[1]) * &linear_factors[2];
        let term = cubic.scale(&scalar);
        if even {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
    });
    sum.scale(&Rational::from_integer(168.into()).recip())
}

/// The cubic of seventh points of six plane points (no three collinear):
/// the invariant with symbolic last argument.
pub fn seventh_cubic(p: &[HomPoint; 6]) -> Result<Form, Error> {
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                if bracket(&p[i], &p[j], &p[k]).is_zero() {
                    return Err(Error::Degenerate(format!(
                        "points {}, {}, {} are collinear",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let e = fano_symbolic(p);
    if e.is_zero() {
        return Err(Error::Degenerate("seventh-point cubic is identically zero".into()));
    }
    Ok(e)
}

/// The conic through five points; fails unless it is unique.
pub fn conic_through_five(pts: &[&HomPoint]) -> Result<PointConic, Error> {
    assert_eq!(pts.len(), 5);
    let monoms = monomials(3, 2);
    let rows = pts
        .iter()
        .map(|p| monoms.iter().map(|m| eval_monomial(m, p.coords())).collect())
        .collect();
    let ker = QMatrix::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(Error::Degenerate(format!(
            "conics through the five points form a {}-dimensional space",
            ker.len()
        )));
    }
    let mut f = Form::zero(3);
    for (m, c) in monoms.iter().zip(&ker[0]) {
        f.add_term(m.clone(), c.clone());
    }
    PointConic::from_form(f)
}

/// For each point `P_i` of a six-tuple not on a conic: the conic through
/// the other five, the unique cubic through all six apolar to that conic,
/// and the sixth intersection point of the two — returned per index.
pub fn sixth_points(p: &[HomPoint; 6]) -> Result<[HomPoint; 6], Error> {
    let mut out = Vec::with_capacity(6);
    for i in 0..6 {
        let five: Vec<&HomPoint> = (0..6).filter(|&j| j != i).map(|j| &p[j]).collect();
        let theta = conic_through_five(&five)
            .map_err(|e| Error::Degenerate(format!("index {}: {e}", i + 1)))?;
        if !theta.is_nonsingular() {
            return Err(Error::Degenerate(format!(
                "index {}: the conic through the other five points is singular",
                i + 1
            )));
        }
        let d = cubic_through_apolar(&theta, &p.iter().cloned().collect::<Vec<_>>())
            .map_err(|e| Error::Degenerate(format!("index {}: {e}", i + 1)))?;
        let par = parametrize_conic(&theta, five[0])?;
        let restricted = d.substitute(&[
            par.comps[0].clone(),
            par.comps[1].clone(),
            par.comps[2].clone(),
        ]);
        let mut sextic = crate::binary::BinaryForm::from_form(&restricted, 6);
        for q in &five {
            let (s0, t0) = par.parameter_of(q);
            sextic = sextic.divide_by_root(&s0, &t0).ok_or_else(|| {
                Error::Degenerate(format!(
                    "index {}: restriction does not vanish at a known point",
                    i + 1
                ))
            })?;
        }
        if sextic.is_zero() || sextic.degree() != 1 {
            return Err(Error::Degenerate(format!(
                "index {}: residual factor is degenerate",
                i + 1
            )));
        }
        let s0 = sextic.coeffs[1].clone();
        let t0 = -&sextic.coeffs[0];
        out.push(par.eval(&s0, &t0));
    }
    Ok(out.try_into().unwrap())
}

/// Determinant of the 3x3 matrix of partials of the net basis: the
/// sextic of singular-member contact points.
pub fn jacobian_sextic(net: &CubicNet) -> Form {
    let m: Vec<Vec<Form>> = (0..3)
        .map(|h| (0..3).map(|j| net.basis[j].partial(h)).collect())
        .collect();
    det_forms(&m)
}

fn rank_of_forms(forms: &[&Form], deg: u32) -> usize {
    let monoms = monomials(3, deg);
    let rows = forms
        .iter()
        .map(|f| monoms.iter().map(|m| f.coeff(m)).collect())
        .collect();
    QMatrix::from_rows(rows).rank()
}

/// Solve for the 2x3 presentation matrix: a linear syzygy among the net
/// basis gives the linear row; a quadratic syzygy chosen canonically
/// modulo the multiples of the linear one gives the quadratic row.
pub fn hilbert_burch(z: &Config7) -> Result<HilbertBurchMatrix, Error> {
    let net = cubic_net(z)?;
    let quarts = monomials(3, 4);
    // unknowns: 9 coefficients l_{j,v} of L_j = sum_v l_{j,v} X_v
    let mut cols: Vec<Form> = Vec::with_capacity(9);
    for j in 0..3 {
        for v in 0..3 {
            cols.push(&Form::variable(3, v) * &net.basis[j]);
        }
    }
    let rows: Vec<Vec<Rational>> = quarts
        .iter()
        .map(|m| cols.iter().map(|f| f.coeff(m)).collect())
        .collect();
    let ker = QMatrix::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(Error::Degenerate(format!(
            "linear syzygies of the net form a {}-dimensional space",
            ker.len()
        )));
    }
    let lvec = &ker[0];
    let linear: Vec<Form> = (0..3)
        .map(|j| Form::linear(&lvec[j * 3..j * 3 + 3]))
        .collect();
    // a dependent linear row cannot present the ideal (six points on a conic)
    let lrank = QMatrix::from_rows((0..3).map(|j| lvec[j * 3..j * 3 + 3].to_vec()).collect()).rank();
    if lrank < 3 {
        return Err(Error::Degenerate(format!(
            "linear row is degenerate (rank {lrank}); six of the points lie on a conic"
        )));
    }
    // quadratic syzygies: 18 unknowns q_{j,m}, equations in degree 5
    let quins = monomials(3, 5);
    let quads = monomials(3, 2);
    let mut qcols: Vec<Form> = Vec::with_capacity(18);
    for j in 0..3 {
        for m in &quads {
            qcols.push(&Form::monomial(3, m, Rational::one()) * &net.basis[j]);
        }
    }
    let qrows: Vec<Vec<Rational>> = quins
        .iter()
        .map(|m| qcols.iter().map(|f| f.coeff(m)).collect())
        .collect();
    let qker = QMatrix::from_rows(qrows).kernel();
    // multiples X_v * (linear syzygy), as coefficient vectors in the same basis
    let multiples: Vec<Vec<Rational>> = (0..3)
        .map(|v| {
            let mut w = vec![Rational::zero(); 18];
            for j in 0..3 {
                let prod = &Form::variable(3, v) * &linear[j];
                for (mi, m) in quads.iter().enumerate() {
                    w[j * 6 + mi] = prod.coeff(m);
                }
            }
            w
        })
        .collect();
    let mut reducer = QMatrix::from_rows(multiples.clone());
    let pivots = reducer.rref();
    let reduce = |w: &[Rational]| -> Vec<Rational> {
        let mut w = w.to_vec();
        for (r, &pc) in pivots.iter().enumerate() {
            let c = w[pc].clone();
            if !c.is_zero() {
                for k in 0..18 {
                    let delta = reducer.at(r, k) * &c;
                    w[k] -= delta;
                }
            }
        }
        w
    };
    let qvec = qker
        .iter()
        .map(|w| reduce(w))
        .find(|w| w.iter().any(|c| !c.is_zero()))
        .ok_or_else(|| {
            Error::Degenerate("no quadratic syzygy independent of the linear one".into())
        })?;
    let quadratic: Vec<Form> = (0..3)
        .map(|j| {
            let mut f = Form::zero(3);
            for (mi, m) in quads.iter().enumerate() {
                f.add_term(m.clone(), qvec[j * 6 + mi].clone());
            }
            f
        })
        .collect();
    let hb = HilbertBurchMatrix {
        linear: linear.try_into().unwrap(),
        quadratic: quadratic.try_into().unwrap(),
    };
    // structural verification: the signed minors span the net exactly
    let minors = hb.minors();
    let net_refs: Vec<&Form> = net.basis.iter().collect();
    let mut all: Vec<&Form> = net_refs.clone();
    all.extend(minors.iter());
    if rank_of_forms(&all, 3) != 3 || rank_of_forms(&minors.iter().collect::<Vec<_>>(), 3) != 3 {
        return Err(Error::Degenerate(
            "presentation minors do not span the net of cubics".into(),
        ));
    }
    Ok(hb)
}

/// Compute the full package for a configuration.
pub fn morley_data(z: &Config7) -> Result<MorleyData, Error> {
    let s = morley_s(z)?;
    let n = skew_matrix_of(&s);
    let f = n.pfaffian()?;
    let q_values = z.q_values();
    let mut prod = Rational::one();
    for q in &q_values {
        prod *= q;
    }
    let psi = if prod.is_zero() { None } else { Some(&f / &prod) };
    Ok(MorleyData { s, n, f, q_values, psi })
}
