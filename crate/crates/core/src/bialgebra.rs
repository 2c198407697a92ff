//! Counits, the data `σ`, `𝔞`, `𝔟` extracted from a slack structure, the
//! convolution algebra and the antipode `S = 𝔞⁻¹ σ(·) 𝔞`.

use crate::algebra::{ComagmaAlgebra, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{LinearMap, Scalar, TensorElement};
use crate::report::ValidationReport;
use crate::slackhopf::{build_hv, SlackHopfCertificate};

/// An algebra morphism `ε: A → 𝕜` together with which counit laws it satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitData {
    pub epsilon: LinearMap,
    /// `(ε⊗A)Δ = id`
    pub is_left_counit: bool,
    /// additionally `(A⊗ε)Δ = id`
    pub is_bialgebra_counit: bool,
}

impl CounitData {
    /// Fails with `InvalidStructure` unless `ε` is an algebra morphism.
    pub fn new(c: &ComagmaAlgebra, epsilon: LinearMap) -> Result<Self> {
        let a = c.algebra();
        let n = a.dim();
        if epsilon.rows() != 1 || epsilon.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "counit must be a 1x{n} matrix"
            )));
        }
        let mut report = ValidationReport::new();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = eval(&epsilon, &a.mul(&a.basis(i), &a.basis(j)));
                if lhs != epsilon.get(0, i) * epsilon.get(0, j) {
                    mult.push(format!("ε({}·{})", a.name(i), a.name(j)));
                }
            }
        }
        report.family("ε multiplicative", mult);
        report.record("ε unital", eval(&epsilon, a.unit()).is_one(), || "ε(1) != 1".into());
        if !report.is_valid() {
            return Err(Error::InvalidStructure(report));
        }
        let mut left = true;
        let mut right = true;
        for i in 0..n {
            let d = c.coproduct(&a.basis(i));
            left &= d.contract_slot(0, &epsilon).expect("shape") == a.basis(i);
            right &= d.contract_slot(1, &epsilon).expect("shape") == a.basis(i);
        }
        Ok(Self {
            epsilon,
            is_left_counit: left,
            is_bialgebra_counit: left && right,
        })
    }

    /// Builds the counit from its values on the basis.
    pub fn from_values(c: &ComagmaAlgebra, values: &[Scalar]) -> Result<Self> {
        let eps = LinearMap::new(c.field(), 1, values.len(), values.to_vec())?;
        Self::new(c, eps)
    }

    pub fn apply(&self, x: &TensorElement) -> Scalar {
        eval(&self.epsilon, x)
    }

    /// `(ε⊗A)t` for a rank-2 tensor.
    pub fn left_leg(&self, t: &TensorElement) -> TensorElement {
        t.contract_slot(0, &self.epsilon).expect("rank-2 tensor over A")
    }
}

/// A left counit found by solving `(ε⊗A)Δ = id` linearly; `None` when the
/// system has no solution or the solution is not an algebra morphism.
pub fn solve_counit(c: &ComagmaAlgebra) -> Option<CounitData> {
    let a = c.algebra();
    let n = a.dim();
    let field = a.field();
    let mut m = LinearMap::zeros(field, n * n, n);
    let mut rhs = vec![field.zero(); n * n];
    for x in 0..n {
        let d = c.coproduct(&a.basis(x));
        for i in 0..n {
            for j in 0..n {
                m.set(x * n + j, i, d.get(&[i, j]).clone());
            }
        }
        rhs[x * n + x] = field.one();
    }
    let eps = m.solve(&rhs).ok()??;
    CounitData::from_values(c, &eps).ok()
}

fn eval(eps: &LinearMap, x: &TensorElement) -> Scalar {
    eps.apply(x.coeffs()).expect("dimension")[0].clone()
}

/// `σ = (ε⊗A)∇`, `𝔞 = (ε⊗A)w`, `𝔟 = (ε⊗A)v`, and the antipode once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeData {
    pub sigma: LinearMap,
    pub a_elem: TensorElement,
    pub b_elem: TensorElement,
    pub s: Option<LinearMap>,
}

/// Applies a linear endomorphism of `A` to an element.
pub fn apply1(m: &LinearMap, x: &TensorElement) -> TensorElement {
    let coeffs = m.apply(x.coeffs()).expect("dimension");
    TensorElement::from_coeffs(x.field(), 1, x.dim(), coeffs).expect("shape")
}

/// `σ` as an `n x n` matrix: `σ(x) = (ε⊗A)∇(x)`.
pub fn sigma_of(cert: &SlackHopfCertificate, eps: &CounitData, a: &FinDimAlgebra) -> LinearMap {
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| eps.left_leg(&cert.nabla_of(&a.basis(i))).into_coeffs())
        .collect();
    LinearMap::from_columns(a.field(), a.dim(), &cols).expect("square")
}

/// Computes `σ`, `𝔞`, `𝔟` and checks
/// (1) `σ(x₁)𝔞x₂ = 𝔞ε(x)`, (2) `∇¹(x)𝔟∇²(x) = 𝔟ε(x)`, (3) `w¹𝔟w² = 1`,
/// (4) `σ(v¹)𝔞v² = 1`, and that `σ` is an antimorphism.
pub fn extract_antipode_data(
    cert: &SlackHopfCertificate,
    c: &ComagmaAlgebra,
    eps: &CounitData,
) -> Result<AntipodeData> {
    if !eps.is_left_counit {
        return Err(Error::NotApplicable("ε is not a left counit".into()));
    }
    let a = c.algebra();
    let sigma = sigma_of(cert, eps, a);
    let a_elem = eps.left_leg(&cert.w);
    let b_elem = eps.left_leg(&cert.v);
    let report = antipode_data_report(cert, c, eps, &sigma, &a_elem, &b_elem);
    if let Some(bad) = report.violations().next() {
        return Err(Error::IdentityViolation(format!("{}: {}", bad.name, bad.detail)));
    }
    Ok(AntipodeData {
        sigma,
        a_elem,
        b_elem,
        s: None,
    })
}

/// `Σ t_ij f(e_i) · mid · e_j`.
pub(crate) fn twisted_sandwich(
    a: &FinDimAlgebra,
    t: &TensorElement,
    f: &LinearMap,
    mid: &TensorElement,
) -> TensorElement {
    let mut out = a.zero();
    for (idx, c) in t.terms() {
        let p = a.mul_all(&[&apply1(f, &a.basis(idx[0])), mid, &a.basis(idx[1])]);
        out = out.add(&p.scale(c)).expect("shape");
    }
    out
}

fn antipode_data_report(
    cert: &SlackHopfCertificate,
    c: &ComagmaAlgebra,
    eps: &CounitData,
    sigma: &LinearMap,
    a_elem: &TensorElement,
    b_elem: &TensorElement,
) -> ValidationReport {
    let a = c.algebra();
    let n = a.dim();
    let mut r = ValidationReport::new();
    let (mut f1, mut f2) = (Vec::new(), Vec::new());
    for i in 0..n {
        let x = a.basis(i);
        let e = eps.apply(&x);
        if twisted_sandwich(a, &c.coproduct(&x), sigma, a_elem) != a_elem.scale(&e) {
            f1.push(format!("x = {}", a.name(i)));
        }
        if a.sandwich(&cert.nabla_of(&x), b_elem) != b_elem.scale(&e) {
            f2.push(format!("x = {}", a.name(i)));
        }
    }
    r.family("σ(x₁)𝔞x₂ = 𝔞ε(x)", f1);
    r.family("∇¹(x)𝔟∇²(x) = 𝔟ε(x)", f2);
    r.record("w¹𝔟w² = 1", a.sandwich(&cert.w, b_elem) == *a.unit(), || {
        format!("w¹𝔟w² = {}", a.sandwich(&cert.w, b_elem))
    });
    let s4 = twisted_sandwich(a, &cert.v, sigma, a_elem);
    r.record("σ(v¹)𝔞v² = 1", s4 == *a.unit(), || format!("σ(v¹)𝔞v² = {s4}"));
    r.merge(antimorphism_report(a, sigma, "σ"));
    r
}

/// `f(xy) = f(y)f(x)` on basis pairs and `f(1) = 1`.
pub fn antimorphism_report(a: &FinDimAlgebra, f: &LinearMap, name: &str) -> ValidationReport {
    let n = a.dim();
    let mut r = ValidationReport::new();
    let imgs: Vec<TensorElement> = (0..n).map(|i| apply1(f, &a.basis(i))).collect();
    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if apply1(f, &a.mul(&a.basis(i), &a.basis(j))) != a.mul(&imgs[j], &imgs[i]) {
                fails.push(format!("{name}({}·{})", a.name(i), a.name(j)));
            }
        }
    }
    r.family(&format!("{name} antimorphism"), fails);
    r.record(format!("{name} unital"), apply1(f, a.unit()) == *a.unit(), || {
        format!("{name}(1) != 1")
    });
    r
}

/// `f ∗ g = m (f⊗g) Δ`.
pub fn convolution(f: &LinearMap, g: &LinearMap, c: &ComagmaAlgebra) -> LinearMap {
    let a = c.algebra();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| {
            let mut out = a.zero();
            for (idx, coef) in c.coproduct(&a.basis(i)).terms() {
                let p = a.mul(&apply1(f, &a.basis(idx[0])), &apply1(g, &a.basis(idx[1])));
                out = out.add(&p.scale(coef)).expect("shape");
            }
            out.into_coeffs()
        })
        .collect();
    LinearMap::from_columns(a.field(), a.dim(), &cols).expect("square")
}

/// `u∘ε`, the unit of the convolution algebra.
pub fn convolution_unit(c: &ComagmaAlgebra, eps: &CounitData) -> LinearMap {
    let a = c.algebra();
    let u = LinearMap::from_columns(a.field(), a.dim(), &[a.unit().coeffs().to_vec()])
        .expect("column");
    u.compose(&eps.epsilon).expect("shapes")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntipodeOutcome {
    Antipode(LinearMap),
    /// `S ∗ id = u∘ε` holds but `id ∗ S = u∘ε` does not.
    LeftInverseOnly(LinearMap),
    /// `𝔞` is not invertible, or `S` fails the left axiom.
    NoAntipode,
}

/// `S = 𝔞⁻¹ σ(·) 𝔞` when `𝔞` is a unit, checked against both convolution axioms.
pub fn build_antipode(
    data: &AntipodeData,
    c: &ComagmaAlgebra,
    eps: &CounitData,
) -> Result<AntipodeOutcome> {
    if !eps.is_bialgebra_counit {
        return Err(Error::NotApplicable("ε is not a two-sided counit".into()));
    }
    let a = c.algebra();
    let Some(a_inv) = a.invert(&data.a_elem) else {
        return Ok(AntipodeOutcome::NoAntipode);
    };
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| {
            a.mul_all(&[&a_inv, &apply1(&data.sigma, &a.basis(i)), &data.a_elem])
                .into_coeffs()
        })
        .collect();
    let s = LinearMap::from_columns(a.field(), a.dim(), &cols).expect("square");
    let id = LinearMap::identity(a.field(), a.dim());
    let ue = convolution_unit(c, eps);
    let left = convolution(&s, &id, c) == ue;
    let right = convolution(&id, &s, c) == ue;
    Ok(match (left, right) {
        (true, true) => AntipodeOutcome::Antipode(s),
        (true, false) => AntipodeOutcome::LeftInverseOnly(s),
        _ => AntipodeOutcome::NoAntipode,
    })
}

/// `H^l = H^{1⊗1}`.
pub fn fusion_operator(c: &ComagmaAlgebra) -> LinearMap {
    build_hv(c, &c.algebra().tensor_unit(2)).expect("1⊗1 has the right shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{solve_or_invert, Field};
    use crate::fixtures;
    use crate::slackhopf::{check_slack_hopf, SlackCheck};

    fn q() -> Field {
        Field::Rationals
    }

    fn data_for(c: &ComagmaAlgebra) -> (CounitData, AntipodeData) {
        let eps = fixtures::standard_counit(c);
        let SlackCheck::Certificate(cert) = check_slack_hopf(c, &c.algebra().tensor_unit(2)).unwrap()
        else {
            panic!("1⊗1 should certify")
        };
        let data = extract_antipode_data(&cert, c, &eps).unwrap();
        (eps, data)
    }

    #[test]
    fn cyclic_groups_recover_inversion() {
        for n in [2, 3] {
            let c = fixtures::group_algebra_cyclic(q(), n);
            let a = c.algebra();
            let (_, data) = data_for(&c);
            assert_eq!(data.a_elem, *a.unit());
            assert_eq!(data.b_elem, *a.unit());
            for i in 0..n {
                assert_eq!(apply1(&data.sigma, &a.basis(i)), a.basis((n - i) % n));
            }
        }
    }

    #[test]
    fn sweedler_sigma_is_the_textbook_antipode() {
        let c = fixtures::sweedler(q());
        let a = c.algebra();
        let (eps, data) = data_for(&c);
        let s = fixtures::sweedler_antipode(q());
        assert_eq!(data.sigma, s);
        assert_eq!(apply1(&s, &a.basis(2)), a.basis(3).scale(&q().from_i64(-1)));
        assert_eq!(build_antipode(&data, &c, &eps).unwrap(), AntipodeOutcome::Antipode(s));
    }

    #[test]
    fn convolution_examples() {
        let c = fixtures::group_algebra_cyclic(q(), 2);
        let eps = fixtures::standard_counit(&c);
        let id = LinearMap::identity(q(), 2);
        let ue = convolution_unit(&c, &eps);
        assert_eq!(convolution(&ue, &id, &c), id);
        let sq = convolution(&id, &id, &c);
        // 1 ↦ 1, g ↦ g² = 1
        assert_eq!(sq.column(0), c.algebra().unit().coeffs().to_vec());
        assert_eq!(sq.column(1), c.algebra().unit().coeffs().to_vec());
    }

    #[test]
    fn s3_antipode_is_group_inversion() {
        let (c, inverse) = fixtures::symmetric_group_s3(q());
        let a = c.algebra();
        let (eps, data) = data_for(&c);
        let AntipodeOutcome::Antipode(s) = build_antipode(&data, &c, &eps).unwrap() else {
            panic!("S₃ is Hopf")
        };
        for (i, &inv) in inverse.iter().enumerate() {
            assert_eq!(apply1(&s, &a.basis(i)), a.basis(inv));
        }
    }

    #[test]
    fn forged_certificate_on_idempotent_monoid_is_rejected() {
        let c = fixtures::idempotent_monoid_algebra(q());
        let a = c.algebra();
        let eps = fixtures::standard_counit(&c);
        let id = LinearMap::identity(q(), 4);
        let cert = SlackHopfCertificate {
            v: a.tensor_unit(2),
            hv: fusion_operator(&c),
            hv_inv: id.clone(),
            w: a.tensor_unit(2),
            nabla: LinearMap::from_columns(
                q(),
                4,
                &[a.tensor_unit(2).into_coeffs(), TensorElement::basis(q(), 2, &[1, 1]).into_coeffs()],
            )
            .unwrap(),
        };
        assert!(matches!(
            extract_antipode_data(&cert, &c, &eps),
            Err(Error::IdentityViolation(_))
        ));
    }

    #[test]
    fn fusion_examples() {
        let inv = |m: &LinearMap| solve_or_invert(m).unwrap().is_invertible();
        assert!(inv(&fusion_operator(&fixtures::group_algebra_cyclic(q(), 2))));
        assert!(!inv(&fusion_operator(&fixtures::m2_flip_comagma(q()))));
        assert!(!inv(&fusion_operator(&fixtures::idempotent_monoid_algebra(q()))));
    }

    #[test]
    fn non_morphism_counit_is_rejected() {
        let c = fixtures::group_algebra_cyclic(q(), 2);
        let bad = CounitData::from_values(&c, &[q().one(), q().from_i64(2)]);
        assert!(matches!(bad, Err(Error::InvalidStructure(_))));
    }
}
