//! Quasi-bialgebras `(A, Δ, ε, φ)`, quasi-antipodes, and the slackness of a
//! slack left Hopf structure.
//!
//! Axioms (Drinfeld):
//!
//! * `φ · (Δ⊗A)Δ(x) = (A⊗Δ)Δ(x) · φ`
//! * `(A⊗A⊗Δ)(φ) · (Δ⊗A⊗A)(φ) = (1⊗φ) · (A⊗Δ⊗A)(φ) · (φ⊗1)`
//! * `(ε⊗A⊗A)φ = (A⊗ε⊗A)φ = (A⊗A⊗ε)φ = 1⊗1`
//!
//! A quasi-antipode `(S, 𝔞, 𝔟)` satisfies
//! QA1 `S(x₁)𝔞x₂ = ε(x)𝔞`, QA2 `x₁𝔟S(x₂) = ε(x)𝔟`,
//! QA3 `φ¹𝔟S(φ²)𝔞φ³ = 1`, QA4 `S(φ⁻¹)𝔞φ⁻²𝔟S(φ⁻³) = 1`.

use crate::algebra::{env_invert, validate_comagma, ComagmaAlgebra, EnvelopingElement, FinDimAlgebra};
use crate::bialgebra::{antimorphism_report, apply1, sigma_of, twisted_sandwich, CounitData};
use crate::error::{Error, Result};
use crate::exactlin::{LinearMap, Scalar, TensorElement};
use crate::report::ValidationReport;
use crate::slackhopf::{check_slack_hopf, torsor_act, SlackCheck, SlackHopfCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiBialgebra {
    pub comagma: ComagmaAlgebra,
    pub eps: CounitData,
    pub phi: TensorElement,
    pub phi_inv: TensorElement,
}

impl QuasiBialgebra {
    pub fn new(
        comagma: ComagmaAlgebra,
        eps: CounitData,
        phi: TensorElement,
        phi_inv: TensorElement,
    ) -> Result<Self> {
        let q = Self::new_unchecked(comagma, eps, phi, phi_inv)?;
        let report = validate_quasibialgebra(&q);
        if !report.is_valid() {
            return Err(Error::InvalidStructure(report));
        }
        Ok(q)
    }

    pub fn new_unchecked(
        comagma: ComagmaAlgebra,
        eps: CounitData,
        phi: TensorElement,
        phi_inv: TensorElement,
    ) -> Result<Self> {
        for t in [&phi, &phi_inv] {
            if t.rank() != 3 || t.dim() != comagma.dim() || t.field() != comagma.field() {
                return Err(Error::DimensionMismatch(
                    "associator must be a rank-3 tensor over A".into(),
                ));
            }
        }
        Ok(Self {
            comagma,
            eps,
            phi,
            phi_inv,
        })
    }

    /// An ordinary bialgebra, `φ = 1⊗1⊗1`.
    pub fn with_trivial_associator(comagma: ComagmaAlgebra, eps: CounitData) -> Result<Self> {
        let one = comagma.algebra().tensor_unit(3);
        Self::new(comagma, eps, one.clone(), one)
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        self.comagma.algebra()
    }

    /// `Δ` applied to one slot of a tensor.
    pub fn delta_at(&self, t: &TensorElement, slot: usize) -> TensorElement {
        t.apply_to_slot(slot, self.comagma.delta()).expect("slot in range")
    }

    /// `ε` applied to one slot of a tensor.
    pub fn counit_at(&self, t: &TensorElement, slot: usize) -> TensorElement {
        t.contract_slot(slot, &self.eps.epsilon).expect("slot in range")
    }
}

/// Checks the comagma and counit axioms, `φφ⁻¹ = φ⁻¹φ = 1`, quasi-coassociativity,
/// the pentagon and the counit triangles.
pub fn validate_quasibialgebra(q: &QuasiBialgebra) -> ValidationReport {
    let a = q.algebra();
    let n = a.dim();
    let mut r = validate_comagma(&q.comagma);
    r.record("two-sided counit", q.eps.is_bialgebra_counit, || {
        "(ε⊗A)Δ = id = (A⊗ε)Δ fails".into()
    });
    let one3 = a.tensor_unit(3);
    let inv_ok =
        a.tensor_mul(&q.phi, &q.phi_inv) == one3 && a.tensor_mul(&q.phi_inv, &q.phi) == one3;
    r.record("φ·φ⁻¹ = 1", inv_ok, || "φ⁻¹ is not the inverse of φ".into());

    let mut coassoc = Vec::new();
    for i in 0..n {
        let d = q.comagma.coproduct(&a.basis(i));
        let left = q.delta_at(&d, 0);
        let right = q.delta_at(&d, 1);
        if a.tensor_mul(&q.phi, &left) != a.tensor_mul(&right, &q.phi) {
            coassoc.push(format!("x = {}", a.name(i)));
        }
    }
    r.family("quasi-coassociativity", coassoc);

    let lhs = a.tensor_mul(&q.delta_at(&q.phi, 2), &q.delta_at(&q.phi, 0));
    let rhs = a.tensor_mul(
        &a.tensor_mul(&a.unit().outer(&q.phi), &q.delta_at(&q.phi, 1)),
        &q.phi.outer(a.unit()),
    );
    r.record("pentagon", lhs == rhs, || "pentagon identity fails".into());

    let one2 = a.tensor_unit(2);
    let mut tri = Vec::new();
    for (slot, label) in [(0, "(ε⊗A⊗A)φ"), (1, "(A⊗ε⊗A)φ"), (2, "(A⊗A⊗ε)φ")] {
        if q.counit_at(&q.phi, slot) != one2 {
            tri.push(format!("{label} != 1⊗1"));
        }
    }
    r.family("counit triangles", tri);
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiAntipode {
    pub s: LinearMap,
    pub a_elem: TensorElement,
    pub b_elem: TensorElement,
}

/// `Σ t_ijk f(e_i) · m1 · g(e_j) · m2 · h(e_k)`; `None` stands for the identity.
pub(crate) fn triple_sandwich(
    a: &FinDimAlgebra,
    t: &TensorElement,
    maps: [Option<&LinearMap>; 3],
    m1: &TensorElement,
    m2: &TensorElement,
) -> TensorElement {
    let img = |m: Option<&LinearMap>, i: usize| match m {
        Some(f) => apply1(f, &a.basis(i)),
        None => a.basis(i),
    };
    let mut out = a.zero();
    for (idx, c) in t.terms() {
        let p = a.mul_all(&[
            &img(maps[0], idx[0]),
            m1,
            &img(maps[1], idx[1]),
            m2,
            &img(maps[2], idx[2]),
        ]);
        out = out.add(&p.scale(c)).expect("shape");
    }
    out
}

/// QA1–QA4 on the basis and on `φ`, `φ⁻¹`, plus `S` an antimorphism.
pub fn check_quasi_antipode(q: &QuasiBialgebra, cand: &QuasiAntipode) -> ValidationReport {
    let a = q.algebra();
    let s = &cand.s;
    let mut r = antimorphism_report(a, s, "S");
    let (mut qa1, mut qa2) = (Vec::new(), Vec::new());
    for i in 0..a.dim() {
        let x = a.basis(i);
        let d = q.comagma.coproduct(&x);
        let e = q.eps.apply(&x);
        if twisted_sandwich(a, &d, s, &cand.a_elem) != cand.a_elem.scale(&e) {
            qa1.push(format!("x = {}", a.name(i)));
        }
        let mut lhs = a.zero();
        for (idx, c) in d.terms() {
            let p = a.mul_all(&[&a.basis(idx[0]), &cand.b_elem, &apply1(s, &a.basis(idx[1]))]);
            lhs = lhs.add(&p.scale(c)).expect("shape");
        }
        if lhs != cand.b_elem.scale(&e) {
            qa2.push(format!("x = {}", a.name(i)));
        }
    }
    r.family("QA1", qa1);
    r.family("QA2", qa2);
    let qa3 = triple_sandwich(a, &q.phi, [None, Some(s), None], &cand.b_elem, &cand.a_elem);
    r.record("QA3", qa3 == *a.unit(), || format!("φ¹𝔟S(φ²)𝔞φ³ = {qa3}"));
    let qa4 = triple_sandwich(a, &q.phi_inv, [Some(s), None, Some(s)], &cand.a_elem, &cand.b_elem);
    r.record("QA4", qa4 == *a.unit(), || format!("S(φ⁻¹)𝔞φ⁻²𝔟S(φ⁻³) = {qa4}"));
    r
}

/// `Σ t_ijk e_i ⊗ e_j · m · f(e_k)` (or `f(e_j) · m · e_k` when `f_middle`).
fn left_hopf_tensor(
    a: &FinDimAlgebra,
    t: &TensorElement,
    f: &LinearMap,
    m: &TensorElement,
    f_middle: bool,
) -> TensorElement {
    let mut out = TensorElement::zeros(a.field(), 2, a.dim());
    for (idx, c) in t.terms() {
        let right = if f_middle {
            a.mul_all(&[&apply1(f, &a.basis(idx[1])), m, &a.basis(idx[2])])
        } else {
            a.mul_all(&[&a.basis(idx[1]), m, &apply1(f, &a.basis(idx[2]))])
        };
        out = out.add(&a.basis(idx[0]).outer(&right).scale(c)).expect("shape");
    }
    out
}

/// `v = φ⁻¹ ⊗ φ⁻²𝔟S(φ⁻³)`.
pub fn v_from_antipode(q: &QuasiBialgebra, s: &LinearMap, b_elem: &TensorElement) -> TensorElement {
    left_hopf_tensor(q.algebra(), &q.phi_inv, s, b_elem, false)
}

/// `w = φ¹ ⊗ S(φ²)𝔞φ³`.
pub fn w_from_antipode(q: &QuasiBialgebra, s: &LinearMap, a_elem: &TensorElement) -> TensorElement {
    left_hopf_tensor(q.algebra(), &q.phi, s, a_elem, true)
}

/// `(x⊗y) ↦ w¹x₁ ⊗ S(x₂)w²y` as a matrix.
pub fn closed_form_inverse(q: &QuasiBialgebra, s: &LinearMap, w: &TensorElement) -> LinearMap {
    let a = q.algebra();
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            let mut out = TensorElement::zeros(a.field(), 2, n);
            for (di, dc) in q.comagma.coproduct(&a.basis(x)).terms() {
                for (wi, wc) in w.terms() {
                    let l = a.mul(&a.basis(wi[0]), &a.basis(di[0]));
                    let r = a.mul_all(&[&apply1(s, &a.basis(di[1])), &a.basis(wi[1]), &a.basis(y)]);
                    out = out.add(&l.outer(&r).scale(&(dc * wc))).expect("shape");
                }
            }
            out.into_coeffs()
        })
        .collect();
    LinearMap::from_columns(a.field(), n * n, &cols).expect("square")
}

/// The left Hopf structure of a quasi-antipode, certified twice: the matrix
/// inverse of `H^v` must equal the closed form `w¹x₁ ⊗ S(x₂)w²y`.
pub fn left_hopf_from_antipode(q: &QuasiBialgebra, qa: &QuasiAntipode) -> Result<SlackHopfCertificate> {
    let v = v_from_antipode(q, &qa.s, &qa.b_elem);
    let w = w_from_antipode(q, &qa.s, &qa.a_elem);
    let cert = match check_slack_hopf(&q.comagma, &v)? {
        SlackCheck::Certificate(cert) => cert,
        SlackCheck::NotSlack(_) => return Err(Error::InverseMismatch),
    };
    if cert.hv_inv != closed_form_inverse(q, &qa.s, &w) || cert.w != w {
        return Err(Error::InverseMismatch);
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slackness {
    pub value: EnvelopingElement,
    pub wbar: TensorElement,
}

/// `σ`, `𝔞 = (ε⊗A)w`, `𝔟 = (ε⊗A)v` of a certificate.
pub fn counit_layer(q: &QuasiBialgebra, cert: &SlackHopfCertificate) -> (LinearMap, TensorElement, TensorElement) {
    (
        sigma_of(cert, &q.eps, q.algebra()),
        q.eps.left_leg(&cert.w),
        q.eps.left_leg(&cert.v),
    )
}

/// `K^t(x⊗y) = t¹x₁ ⊗ σ(x₂)t²y`, applied to a rank-2 tensor.
pub fn k_operator(
    q: &QuasiBialgebra,
    sigma: &LinearMap,
    t: &TensorElement,
    u: &TensorElement,
) -> TensorElement {
    let a = q.algebra();
    let mut out = TensorElement::zeros(a.field(), 2, a.dim());
    for (ui, uc) in u.terms() {
        for (di, dc) in q.comagma.coproduct(&a.basis(ui[0])).terms() {
            let coef = uc * dc;
            for (ti, tc) in t.terms() {
                let l = a.mul(&a.basis(ti[0]), &a.basis(di[0]));
                let r = a.mul_all(&[&apply1(sigma, &a.basis(di[1])), &a.basis(ti[1]), &a.basis(ui[1])]);
                out = out.add(&l.outer(&r).scale(&(&coef * tc))).expect("shape");
            }
        }
    }
    out
}

/// `sl(v) = K^{w̄}(v)` with `w̄ = φ¹ ⊗ σ(φ²)𝔞φ³`; checks `(ε⊗A)sl(v) = 1`.
pub fn slackness(q: &QuasiBialgebra, cert: &SlackHopfCertificate) -> Result<Slackness> {
    let (sigma, a_elem, _) = counit_layer(q, cert);
    let wbar = w_from_antipode(q, &sigma, &a_elem);
    let value = k_operator(q, &sigma, &wbar, &cert.v);
    if q.eps.left_leg(&value) != *q.algebra().unit() {
        return Err(Error::IdentityViolation(format!(
            "(ε⊗A)sl(v) = {}",
            q.eps.left_leg(&value)
        )));
    }
    Ok(Slackness { value, wbar })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `sl(v) = 1⊗1`; the quasi-antipode is `(σ, 𝔞, 𝔟)`.
    LeftHopf(QuasiAntipode),
    SlackOnly { sl: EnvelopingElement, invertible: bool },
}

/// Left Hopf exactly when the slackness vanishes. In that case also checks
/// `∇ = (A⊗σ)Δ`, `w = w̄`, `v = φ⁻¹ ⊗ φ⁻²𝔟σ(φ⁻³)` and QA1–QA4 for `(σ, 𝔞, 𝔟)`.
pub fn classify_slack_structure(q: &QuasiBialgebra, cert: &SlackHopfCertificate) -> Result<Classification> {
    let a = q.algebra();
    let sl = slackness(q, cert)?;
    if sl.value != a.tensor_unit(2) {
        let invertible = env_invert(a, &sl.value).is_some();
        return Ok(Classification::SlackOnly {
            sl: sl.value,
            invertible,
        });
    }
    let (sigma, a_elem, b_elem) = counit_layer(q, cert);
    let mut r = ValidationReport::new();
    let mut nab = Vec::new();
    for i in 0..a.dim() {
        let expected = q.comagma.coproduct(&a.basis(i)).apply_to_slot(1, &sigma)?;
        if cert.nabla_of(&a.basis(i)) != expected {
            nab.push(format!("x = {}", a.name(i)));
        }
    }
    r.family("∇ = (A⊗σ)Δ", nab);
    r.record("w = w̄", cert.w == sl.wbar, || "w differs from w̄".into());
    let vbar = v_from_antipode(q, &sigma, &b_elem);
    r.record("v = v̄", cert.v == vbar, || "v differs from v̄".into());
    let qa = QuasiAntipode {
        s: sigma,
        a_elem,
        b_elem,
    };
    r.merge(check_quasi_antipode(q, &qa));
    if let Some(bad) = r.violations().next() {
        return Err(Error::IdentityViolation(format!("{}: {}", bad.name, bad.detail)));
    }
    Ok(Classification::LeftHopf(qa))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// `v = v₀ ◁ γ` with `v₀` left Hopf for `antipode` and `γ = sl(v)`.
    Decomposed {
        v0: TensorElement,
        gamma: EnvelopingElement,
        antipode: QuasiAntipode,
    },
    /// `sl(v)` is not a unit of `Aᵉ`.
    NotQuasiHopf { sl: EnvelopingElement },
}

/// Splits `v` into the unique left Hopf structure `v₀ = v ◁ γ⁻¹` and
/// `γ = sl(v)`. The quasi-antipode of `v₀` is `(σ, 𝔞, γ̄¹𝔟γ̄²)` with
/// `γ̄ = γ⁻¹`; it is rebuilt from `v₀` independently and compared.
pub fn torsor_decompose(q: &QuasiBialgebra, cert: &SlackHopfCertificate) -> Result<Decomposition> {
    let a = q.algebra();
    let gamma = slackness(q, cert)?.value;
    let Some(gamma_inv) = env_invert(a, &gamma) else {
        return Ok(Decomposition::NotQuasiHopf { sl: gamma });
    };
    let v0 = torsor_act(cert, &gamma_inv);
    let (sigma, a_elem, b_elem) = counit_layer(q, cert);
    let predicted = QuasiAntipode {
        s: sigma,
        a_elem,
        b_elem: a.sandwich(&gamma_inv, &b_elem),
    };
    let violation = |what: &str| Error::IdentityViolation(format!("torsor decomposition: {what}"));
    let cert0 = match check_slack_hopf(&q.comagma, &v0)? {
        SlackCheck::Certificate(c0) => c0,
        SlackCheck::NotSlack(_) => return Err(violation("v ◁ γ⁻¹ is not slack")),
    };
    match classify_slack_structure(q, &cert0)? {
        Classification::LeftHopf(qa0) if qa0 == predicted => {}
        Classification::LeftHopf(_) => return Err(violation("quasi-antipode of v₀ differs")),
        Classification::SlackOnly { .. } => return Err(violation("v₀ is not left Hopf")),
    }
    if left_hopf_from_antipode(q, &predicted)?.v != v0 {
        return Err(violation("quasi-antipode does not regenerate v₀"));
    }
    if torsor_act(&cert0, &gamma) != cert.v {
        return Err(violation("v₀ ◁ γ != v"));
    }
    Ok(Decomposition::Decomposed {
        v0,
        gamma,
        antipode: predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;

    fn q() -> Field {
        Field::Rationals
    }

    fn cert_of(c: &ComagmaAlgebra, v: &TensorElement) -> SlackHopfCertificate {
        match check_slack_hopf(c, v).unwrap() {
            SlackCheck::Certificate(cert) => cert,
            SlackCheck::NotSlack(_) => panic!("expected a certificate"),
        }
    }

    #[test]
    fn trivial_associator_and_kz2_quasi_validate() {
        let qb = fixtures::group_quasi(fixtures::group_algebra_cyclic(q(), 3));
        assert!(validate_quasibialgebra(&qb).is_valid());
        let kq = fixtures::kz2_quasi(q());
        assert!(validate_quasibialgebra(&kq).is_valid(), "{}", validate_quasibialgebra(&kq));
    }

    #[test]
    fn broken_inverse_is_reported() {
        let mut kq = fixtures::kz2_quasi(q());
        kq.phi_inv = kq.algebra().tensor_unit(3);
        let r = validate_quasibialgebra(&kq);
        assert!(r.has_violation("φ·φ⁻¹"));
    }

    #[test]
    fn group_inversion_is_a_quasi_antipode() {
        let qb = fixtures::group_quasi(fixtures::group_algebra_cyclic(q(), 3));
        let a = qb.algebra();
        let qa = QuasiAntipode {
            s: fixtures::group_inversion(&qb.comagma),
            a_elem: a.unit().clone(),
            b_elem: a.unit().clone(),
        };
        assert!(check_quasi_antipode(&qb, &qa).is_valid());
        let bad = QuasiAntipode {
            s: LinearMap::identity(q(), 3),
            ..qa
        };
        let r = check_quasi_antipode(&qb, &bad);
        assert!(r.violations().any(|c| c.name == "QA1" && c.detail == "x = g"));
    }

    #[test]
    fn kz2_quasi_known_antipode_validates_and_certifies() {
        let kq = fixtures::kz2_quasi(q());
        let qa = fixtures::kz2_quasi_antipode(&kq);
        assert!(check_quasi_antipode(&kq, &qa).is_valid());
        let cert = left_hopf_from_antipode(&kq, &qa).unwrap();
        assert_eq!(cert.w, cert.apply_hv_inv(&kq.algebra().tensor_unit(2)));
        let sl = slackness(&kq, &cert).unwrap();
        assert_eq!(sl.value, kq.algebra().tensor_unit(2));
    }

    #[test]
    fn forged_b_gives_inverse_mismatch() {
        let qb = fixtures::group_quasi(fixtures::group_algebra_cyclic(q(), 2));
        let a = qb.algebra();
        let qa = QuasiAntipode {
            s: fixtures::group_inversion(&qb.comagma),
            a_elem: a.unit().clone(),
            b_elem: a.unit().scale(&q().from_i64(2)),
        };
        assert_eq!(left_hopf_from_antipode(&qb, &qa), Err(Error::InverseMismatch));
    }

    #[test]
    fn classification_of_group_algebra_structures() {
        let qb = fixtures::group_quasi(fixtures::group_algebra_cyclic(q(), 2));
        let a = qb.algebra();
        let cert = cert_of(&qb.comagma, &a.tensor_unit(2));
        let Classification::LeftHopf(qa) = classify_slack_structure(&qb, &cert).unwrap() else {
            panic!("1⊗1 is left Hopf")
        };
        assert_eq!(qa.s, fixtures::group_inversion(&qb.comagma));
        // g⊗g = (1⊗1) ◁ (g⊗1) has slackness g⊗1
        let gg = TensorElement::basis(q(), 2, &[1, 1]);
        let cert2 = cert_of(&qb.comagma, &gg);
        assert_eq!(
            classify_slack_structure(&qb, &cert2).unwrap(),
            Classification::SlackOnly {
                sl: TensorElement::basis(q(), 2, &[1, 0]),
                invertible: true
            }
        );
        // 1⊗g is itself left Hopf: 𝔟 = g
        let one_g = TensorElement::basis(q(), 2, &[0, 1]);
        let cert3 = cert_of(&qb.comagma, &one_g);
        let Classification::LeftHopf(qa3) = classify_slack_structure(&qb, &cert3).unwrap() else {
            panic!("1⊗g is left Hopf")
        };
        assert_eq!(qa3.b_elem, a.basis(1));
        assert_eq!(qa3.a_elem, a.basis(1));
    }

    #[test]
    fn decomposition_of_shifted_structure() {
        let qb = fixtures::group_quasi(fixtures::group_algebra_cyclic(q(), 2));
        let a = qb.algebra();
        let gg = TensorElement::basis(q(), 2, &[1, 1]);
        let cert = cert_of(&qb.comagma, &gg);
        let Decomposition::Decomposed { v0, gamma, .. } = torsor_decompose(&qb, &cert).unwrap() else {
            panic!("group algebras are quasi-Hopf")
        };
        assert_eq!(gamma, TensorElement::basis(q(), 2, &[1, 0]));
        assert_eq!(v0, a.tensor_unit(2));
        let one = cert_of(&qb.comagma, &a.tensor_unit(2));
        let Decomposition::Decomposed { v0, gamma, .. } = torsor_decompose(&qb, &one).unwrap() else {
            panic!()
        };
        assert_eq!(v0, a.tensor_unit(2));
        assert_eq!(gamma, a.tensor_unit(2));
    }
}
