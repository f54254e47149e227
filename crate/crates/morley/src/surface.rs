//! Cubic surfaces in three-space: the polarized trilinear form, the
//! quartic branch cone of the projection from a surface point, plane
//! restriction, and interpolation of the surface blown down from six
//! plane points.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::apolarity::{bracket, HomPoint};
use crate::config7::{eval_monomial, Config7};
use crate::error::Error;
use crate::form::{monomials, Form};
use crate::matrix::QMatrix;
use crate::rational::Rational;

/// A cubic form in four variables, not identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicSurface {
    form: Form,
}

impl CubicSurface {
    pub fn new(form: Form) -> Result<Self, Error> {
        if form.nvars() != 4 || form.is_zero() || form.homogeneous_degree_in(&[0, 1, 2, 3]) != Some(3)
        {
            return Err(Error::Degenerate(
                "expected a nonzero degree-3 form in four variables".into(),
            ));
        }
        Ok(CubicSurface { form })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn contains(&self, z: &[Rational; 4]) -> bool {
        self.form.eval(z).is_zero()
    }
}

fn directional(f: &Form, v: &[Rational; 4]) -> Form {
    let mut out = Form::zero(4);
    for i in 0..4 {
        out = &out + &f.partial(i).scale(&v[i]);
    }
    out
}

/// The symmetric trilinear form polarizing the cubic:
/// `f(x, y, z) = (1/6) D_x D_y D_z form`, so `f(x,x,x) = form(x)`.
pub fn trilinear_eval(s: &CubicSurface, x: &[Rational; 4], y: &[Rational; 4], z: &[Rational; 4]) -> Rational {
    let g = directional(&directional(&directional(&s.form, x), y), z);
    g.coeff(&[0, 0, 0, 0]) / Rational::from_integer(6.into())
}

/// One symbolic slot: `f(z, X, X) = (1/3) D_z form`, a quadric in `X`.
pub fn partial_polar_1(s: &CubicSurface, z: &[Rational; 4]) -> Form {
    directional(&s.form, z).scale(&Rational::new(1.into(), 3.into()))
}

/// Two concrete slots: `f(z, z, X) = (1/6) D_z D_z form`, linear in `X`.
pub fn partial_polar_2(s: &CubicSurface, z: &[Rational; 4]) -> Form {
    directional(&directional(&s.form, z), z).scale(&Rational::new(1.into(), 6.into()))
}

/// The branch locus of the projection from a point `z` of the surface:
/// the quartic cone `3 f(z,X,X)^2 - 4 f(z,z,X) f(X,X,X)` with vertex `z`.
pub fn branch_cone(s: &CubicSurface, z: &[Rational; 4]) -> Result<Form, Error> {
    if !s.contains(z) {
        return Err(Error::Degenerate("vertex is not on the surface".into()));
    }
    let q = partial_polar_1(s, z);
    let l = partial_polar_2(s, z);
    Ok(&(&q * &q).scale(&Rational::from_integer(3.into()))
        - &(&l * &s.form).scale(&Rational::from_integer(4.into())))
}

/// Restrict a form in four variables to a plane given by a linear
/// parametrization (four linear forms in three variables, rank 3).
pub fn restrict_to_plane(b: &Form, plane: &[Form; 4]) -> Result<Form, Error> {
    let rows: Vec<Vec<Rational>> = plane
        .iter()
        .map(|l| {
            assert_eq!(l.nvars(), 3);
            vec![l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]), l.coeff(&[0, 0, 1])]
        })
        .collect();
    if QMatrix::from_rows(rows).rank() != 3 {
        return Err(Error::Dimension("plane parametrization is not injective".into()));
    }
    Ok(b.substitute(plane))
}

/// Deterministic basis of the four-dimensional space of plane cubics
/// through six points (no three collinear, not on a conic).
pub fn cubics_through_6points(p: &[HomPoint; 6]) -> Result<[Form; 4], Error> {
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
    let quads = monomials(3, 2);
    let vero = QMatrix::from_rows(
        p.iter()
            .map(|q| quads.iter().map(|m| eval_monomial(m, q.coords())).collect())
            .collect(),
    );
    if vero.rank() < 6 {
        return Err(Error::Degenerate("the six points lie on a conic".into()));
    }
    let cubs = monomials(3, 3);
    let rows = p
        .iter()
        .map(|q| cubs.iter().map(|m| eval_monomial(m, q.coords())).collect())
        .collect();
    let ker = QMatrix::from_rows(rows).kernel();
    if ker.len() != 4 {
        return Err(Error::Degenerate(format!(
            "cubics through the six points form a {}-dimensional space",
            ker.len()
        )));
    }
    let basis: Vec<Form> = ker
        .iter()
        .map(|v| {
            let mut f = Form::zero(3);
            for (m, c) in cubs.iter().zip(v) {
                f.add_term(m.clone(), c.clone());
            }
            f
        })
        .collect();
    Ok(basis.try_into().unwrap())
}

/// Image of a plane point under the evaluation map of the cubic basis;
/// `None` exactly on the base locus (the six points).
pub fn mu_image(basis: &[Form; 4], p: &HomPoint) -> Option<[Rational; 4]> {
    let v: Vec<Rational> = basis.iter().map(|f| f.eval(p.coords())).collect();
    if v.iter().all(|c| c.is_zero()) {
        None
    } else {
        Some(v.try_into().unwrap())
    }
}

/// Interpolate the cubic surface swept out by the evaluation map of the
/// six-point cubic system: the unique cubic in four variables vanishing
/// on the images of a seeded random sample of plane points.
pub fn surface_from_6points(p: &[HomPoint; 6], seed: u64) -> Result<(CubicSurface, [Form; 4]), Error> {
    let basis = cubics_through_6points(p)?;
    let monoms4 = monomials(4, 3);
    let attempt = |seed: u64| -> Result<CubicSurface, Error> {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        while rows.len() < 25 {
            let q = HomPoint::from_ints(
                rng.gen_range(-20..21),
                rng.gen_range(-20..21),
                rng.gen_range(1..21),
            );
            let Some(img) = mu_image(&basis, &q) else { continue };
            rows.push(monoms4.iter().map(|m| {
                let mut r = Rational::one();
                for (i, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        r *= &img[i];
                    }
                }
                r
            }).collect());
        }
        let ker = QMatrix::from_rows(rows).kernel();
        if ker.len() != 1 {
            return Err(Error::Degenerate(format!(
                "interpolation kernel has dimension {}",
                ker.len()
            )));
        }
        let mut f = Form::zero(4);
        for (m, c) in monoms4.iter().zip(&ker[0]) {
            f.add_term(m.clone(), c.clone());
        }
        CubicSurface::new(f)
    };
    // one resample against unlucky samples before giving up
    let surface = attempt(seed).or_else(|_| attempt(seed.wrapping_add(0x9e3779b97f4a7c15)))?;
    Ok((surface, basis))
}

/// The six-point interpolation applied to the first six points of a
/// seven-point configuration.
pub fn surface_of_config(z: &Config7, seed: u64) -> Result<(CubicSurface, [Form; 4]), Error> {
    let pts: Vec<HomPoint> = z.points()[..6].to_vec();
    surface_from_6points(&pts.try_into().unwrap(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i;

    fn fermat() -> CubicSurface {
        let mut f = Form::zero(4);
        for i in 0..4 {
            let mut e = vec![0u32; 4];
            e[i] = 3;
            f.add_term(e, Rational::one());
        }
        CubicSurface::new(f).unwrap()
    }

    fn v4(a: i64, b: i64, c: i64, d: i64) -> [Rational; 4] {
        [rat_i(a), rat_i(b), rat_i(c), rat_i(d)]
    }

    #[test]
    fn trilinear_fermat_and_symmetry() {
        let s = fermat();
        let x = v4(1, 2, 3, 4);
        let y = v4(-1, 0, 2, 5);
        let z = v4(2, 2, -3, 1);
        // Fermat polarization is sum x_i y_i z_i
        let expect: Rational = (0..4).map(|i| &(&x[i] * &y[i]) * &z[i]).sum();
        assert_eq!(trilinear_eval(&s, &x, &y, &z), expect);
        // symmetry and the cubic on the diagonal
        assert_eq!(trilinear_eval(&s, &x, &y, &z), trilinear_eval(&s, &z, &x, &y));
        assert_eq!(trilinear_eval(&s, &y, &x, &z), trilinear_eval(&s, &x, &y, &z));
        assert_eq!(trilinear_eval(&s, &x, &x, &x), s.form().eval(&x));
    }

    #[test]
    fn partial_polars_match_formal_derivatives() {
        let mut f = Form::zero(4);
        for (k, m) in monomials(4, 3).into_iter().enumerate() {
            f.add_term(m, rat_i((k as i64 % 7) - 3));
        }
        let s = CubicSurface::new(f.clone()).unwrap();
        let z = v4(1, -2, 3, 5);
        // 3 f(z, z, X) equals half the second directional derivative
        let d2 = directional(&directional(&f, &z), &z);
        assert_eq!(partial_polar_2(&s, &z).scale(&rat_i(3)), d2.scale(&Rational::new(1.into(), 2.into())));
        // 3 f(z, X, X) is the first directional derivative
        assert_eq!(partial_polar_1(&s, &z).scale(&rat_i(3)), directional(&f, &z));
        // consistency with the full polarization on concrete vectors
        let x = v4(0, 1, 1, 2);
        assert_eq!(
            trilinear_eval(&s, &z, &z, &x),
            partial_polar_2(&s, &z).eval(&x)
        );
        assert_eq!(
            trilinear_eval(&s, &z, &x, &x),
            partial_polar_1(&s, &z).eval(&x)
        );
    }

    #[test]
    fn branch_cone_fermat_example() {
        let s = fermat();
        let z = v4(1, -1, 0, 0);
        let b = branch_cone(&s, &z).unwrap();
        // 3 (X0^2 - X1^2)^2 - 4 (X0 + X1)(sum X_i^3)
        let x = |i: usize| Form::variable(4, i);
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let l = &x(0) + &x(1);
        let expect = &(&q * &q).scale(&rat_i(3)) - &(&l * s.form()).scale(&rat_i(4));
        assert_eq!(b, expect);
        // vertex on the cone
        assert!(b.eval(&z).is_zero());
        // off-surface vertex rejected
        assert!(branch_cone(&s, &v4(1, 1, 1, 1)).is_err());
    }

    #[test]
    fn branch_cone_is_a_cone() {
        let s = fermat();
        for z in [v4(1, -1, 0, 0), v4(0, 1, 0, -1), v4(3, -3, 5, -5)] {
            let b = branch_cone(&s, &z).unwrap();
            // symbolic: B(X + lambda z) = B(X) in 5 variables (lambda last)
            let subs: Vec<Form> = (0..4)
                .map(|i| &Form::variable(5, i) + &Form::variable(5, 4).scale(&z[i]))
                .collect();
            let shifted = b.substitute(&subs);
            assert_eq!(shifted, b.shift_vars(5, 0));
        }
    }

    #[test]
    fn residual_double_root_on_cone_points() {
        // for X on the cone, the cubic t^3 f(X,X,X) + 3 t^2 f(z,X,X)
        // + 3 t f(z,z,X) (+ 0) acquires a double root after dropping t = 0:
        // discriminant of the residual quadratic vanishes
        let s = fermat();
        let z = v4(1, -1, 0, 0);
        // a rational point of the cone: solve on the line X = z + t e2...
        // easier: any X with f(z,X,X)... take X on the cone by construction:
        // X with 3 q(X)^2 = 4 l(X) F(X); use X = (1, 1, c, d) search
        let b = branch_cone(&s, &z).unwrap();
        let mut found = 0;
        for a0 in -6i64..7 {
            for a1 in -6i64..7 {
                let x = v4(a0, a1, a0 + a1, -1);
                if !b.eval(&x).is_zero() {
                    continue;
                }
                let f3 = s.form().eval(&x);
                let f2 = partial_polar_1(&s, &z).eval(&x);
                let f1 = partial_polar_2(&s, &z).eval(&x);
                // residual quadratic f3 t^2 + 3 f2 t + 3 f1
                let disc = &(&(&f2 * &f2) * &rat_i(9)) - &(&(&f3 * &f1) * &rat_i(12));
                assert!(disc.is_zero());
                found += 1;
            }
        }
        assert!(found > 0, "no rational cone points in the search box");
    }

    #[test]
    fn restriction_examples() {
        let s = fermat();
        let z = v4(1, -1, 0, 0);
        let b = branch_cone(&s, &z).unwrap();
        // identity embedding X3 = 0
        let x3 = |i: usize| Form::variable(3, i);
        let emb = [x3(0), x3(1), x3(2), Form::zero(3)];
        let r = restrict_to_plane(&b, &emb).unwrap();
        assert_eq!(r.homogeneous_degree_in(&[0, 1, 2]), Some(4));
        // rank-deficient parametrization rejected
        let bad = [x3(0), x3(0).scale(&rat_i(2)), x3(1), &x3(0) + &x3(1)];
        assert!(restrict_to_plane(&b, &bad).is_err());
        // plane avoiding the vertex: X0 = 0 does not contain z? z = (1,-1,0,0)
        // has X0 = 1, so the plane X0 = u+v, X1 = u-v style frame avoiding z:
        // use the plane X0 + X1 = ... simplest: {X = (0, u, v, w)}
        let plane = [Form::zero(3), x3(0), x3(1), x3(2)];
        let quartic = restrict_to_plane(&b, &plane).unwrap();
        assert_eq!(quartic.homogeneous_degree_in(&[0, 1, 2]), Some(4));
        // sampled smoothness probe: on a few random lines the three partials
        // share no root (gcd of their restrictions is constant)
        use crate::binary::BinaryForm;
        let lines: [([i64; 3], [i64; 3]); 3] = [
            ([1, 0, 0], [0, 1, 2]),
            ([0, 1, 0], [1, 1, 1]),
            ([1, 2, 3], [3, 1, 0]),
        ];
        for (pa, pb) in lines {
            let sub: Vec<Form> = (0..3)
                .map(|i| {
                    &Form::variable(2, 0).scale(&rat_i(pa[i])) + &Form::variable(2, 1).scale(&rat_i(pb[i]))
                })
                .collect();
            let mut gcd: Vec<Rational> = Vec::new();
            for i in 0..3 {
                let part = quartic.partial(i).substitute(&sub);
                if part.is_zero() {
                    continue;
                }
                let bf = BinaryForm::from_form(&part, 3);
                gcd = if gcd.is_empty() {
                    bf.coeffs.clone()
                } else {
                    crate::binary::univariate_gcd(&gcd, &bf.coeffs)
                };
            }
            assert_eq!(gcd.len(), 1, "partials share a root on a probe line");
        }
    }

    #[test]
    fn surface_interpolation_fixture() {
        let pts: [HomPoint; 6] = [
            HomPoint::from_ints(1, 0, 0),
            HomPoint::from_ints(0, 1, 0),
            HomPoint::from_ints(0, 0, 1),
            HomPoint::from_ints(1, 1, 1),
            HomPoint::from_ints(2, 3, 5),
            HomPoint::from_ints(11, 13, 29),
        ];
        let (surface, basis) = surface_from_6points(&pts, 42).unwrap();
        // the map is undefined exactly at the base points
        for p in &pts {
            assert!(mu_image(&basis, p).is_none());
        }
        // fresh sample points map onto the surface
        let mut rng = StdRng::seed_from_u64(1000);
        let mut checked = 0;
        while checked < 50 {
            let q = HomPoint::from_ints(
                rng.gen_range(-15..16),
                rng.gen_range(-15..16),
                rng.gen_range(1..16),
            );
            let Some(img) = mu_image(&basis, &q) else { continue };
            assert!(surface.form().eval(&img).is_zero());
            checked += 1;
        }
    }

    #[test]
    fn surface_interpolation_rejects_degenerate_points() {
        let collinear: [HomPoint; 6] = [
            HomPoint::from_ints(1, 0, 0),
            HomPoint::from_ints(0, 1, 0),
            HomPoint::from_ints(1, 1, 0),
            HomPoint::from_ints(0, 0, 1),
            HomPoint::from_ints(2, 3, 5),
            HomPoint::from_ints(11, 13, 29),
        ];
        assert!(surface_from_6points(&collinear, 1).is_err());
        let conic: Vec<HomPoint> = (1..7).map(|t: i64| HomPoint::from_ints(1, t, t * t)).collect();
        assert!(surface_from_6points(&conic.try_into().unwrap(), 1).is_err());
    }
}
