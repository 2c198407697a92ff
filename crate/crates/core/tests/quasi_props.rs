use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slackhopf_core::algebra::{env_invert, EnvelopingElement};
use slackhopf_core::bialgebra::apply1;
use slackhopf_core::exactlin::{Field, TensorElement};
use slackhopf_core::fixtures;
use slackhopf_core::quasihopf::{
    check_quasi_antipode, classify_slack_structure, counit_layer, left_hopf_from_antipode, slackness,
    Classification, QuasiAntipode, QuasiBialgebra,
};
use slackhopf_core::slackhopf::{check_slack_hopf, random_tensor, torsor_act, SlackCheck, SlackHopfCertificate};

fn cert_of(q: &QuasiBialgebra, v: &TensorElement) -> SlackHopfCertificate {
    match check_slack_hopf(&q.comagma, v).unwrap() {
        SlackCheck::Certificate(c) => c,
        SlackCheck::NotSlack(_) => panic!("not slack"),
    }
}

fn random_unit(q: &QuasiBialgebra, rng: &mut ChaCha8Rng) -> EnvelopingElement {
    let a = q.algebra();
    loop {
        let g = random_tensor(rng, a.field(), 2, a.dim());
        if env_invert(a, &g).is_some() {
            return g;
        }
    }
}

/// Every quasi-bialgebra fixture with a left Hopf structure to start from.
fn fixtures_with_base() -> Vec<(&'static str, QuasiBialgebra, TensorElement)> {
    let f = Field::Rationals;
    let kq = fixtures::kz2_quasi(f);
    let kq_v = left_hopf_from_antipode(&kq, &fixtures::kz2_quasi_antipode(&kq)).unwrap().v;
    let mut out = vec![("kZ2 quasi", kq, kq_v)];
    for (name, c) in [
        ("Q[Z/2]", fixtures::group_algebra_cyclic(f, 2)),
        ("Q[Z/3]", fixtures::group_algebra_cyclic(f, 3)),
        ("Sweedler", fixtures::sweedler(f)),
    ] {
        let q = fixtures::group_quasi(c);
        let one = q.algebra().tensor_unit(2);
        out.push((name, q, one));
    }
    out
}

#[test]
fn slackness_transforms_along_the_torsor() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, q, v) in fixtures_with_base() {
        let a = q.algebra();
        // start from a structure that is not left Hopf
        let base = torsor_act(&cert_of(&q, &v), &random_unit(&q, &mut rng));
        let cert = cert_of(&q, &base);
        let sl = slackness(&q, &cert).unwrap().value;
        for _ in 0..20 {
            let gamma = random_unit(&q, &mut rng);
            let gamma0 = q.eps.left_leg(&gamma);
            let moved = cert_of(&q, &torsor_act(&cert, &gamma));
            let lhs = slackness(&q, &moved).unwrap().value;
            let left = a.unit().outer(&a.invert(&gamma0).unwrap());
            let rhs = a.env_mul(&a.env_mul(&left, &sl), &gamma);
            assert_eq!(lhs, rhs, "{name}");
            assert_eq!(q.eps.left_leg(&lhs), *a.unit(), "{name}");
        }
    }
}

#[test]
fn slackness_intertwines_nabla_and_twisted_coproduct() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, q, v) in fixtures_with_base() {
        let a = q.algebra();
        for _ in 0..3 {
            let moved = torsor_act(&cert_of(&q, &v), &random_unit(&q, &mut rng));
            let cert = cert_of(&q, &moved);
            let (sigma, _, _) = counit_layer(&q, &cert);
            let sl = slackness(&q, &cert).unwrap().value;
            for i in 0..a.dim() {
                let x = a.basis(i);
                let twisted = q.comagma.coproduct(&x).apply_to_slot(1, &sigma).unwrap();
                assert_eq!(
                    a.env_mul(&sl, &cert.nabla_of(&x)),
                    a.env_mul(&twisted, &sl),
                    "{name}, x = {}",
                    a.name(i)
                );
            }
        }
    }
}

#[test]
fn wbar_commutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, q, v) in fixtures_with_base() {
        let a = q.algebra();
        let moved = torsor_act(&cert_of(&q, &v), &random_unit(&q, &mut rng));
        for cert in [cert_of(&q, &v), cert_of(&q, &moved)] {
            let (sigma, _, _) = counit_layer(&q, &cert);
            let wbar = slackness(&q, &cert).unwrap().wbar;
            for i in 0..a.dim() {
                let x = a.basis(i);
                let lhs = a.tensor_mul(&wbar, &x.outer(a.unit()));
                // Σ w̄¹x₁₁ ⊗ σ(x₁₂)w̄²x₂
                let mut rhs = a.zero().outer(&a.zero());
                let dd = q.delta_at(&q.comagma.coproduct(&x), 0);
                for (idx, c) in dd.terms() {
                    for (widx, wc) in wbar.terms() {
                        let l = a.mul(&a.basis(widx[0]), &a.basis(idx[0]));
                        let r = a.mul_all(&[&apply1(&sigma, &a.basis(idx[1])), &a.basis(widx[1]), &a.basis(idx[2])]);
                        rhs = rhs.add(&l.outer(&r).scale(&(c * wc))).unwrap();
                    }
                }
                assert_eq!(lhs, rhs, "{name}, x = {}", a.name(i));
            }
        }
    }
}

#[test]
fn left_hopf_certificates_recover_the_antipode() {
    for (name, q, v) in fixtures_with_base() {
        let a = q.algebra();
        let cert = cert_of(&q, &v);
        let Classification::LeftHopf(qa) = classify_slack_structure(&q, &cert).unwrap() else {
            panic!("{name}: base structure is left Hopf")
        };
        let (sigma, a_elem, b_elem) = counit_layer(&q, &cert);
        assert_eq!(qa.a_elem, q.eps.left_leg(&cert.w), "{name}");
        assert_eq!(qa.b_elem, q.eps.left_leg(&cert.v), "{name}");
        assert_eq!((qa.s.clone(), qa.a_elem.clone(), qa.b_elem.clone()), (sigma, a_elem, b_elem));
        for i in 0..a.dim() {
            let x = a.basis(i);
            let expected = q.comagma.coproduct(&x).apply_to_slot(1, &qa.s).unwrap();
            assert_eq!(cert.nabla_of(&x), expected, "{name}");
        }
        assert!(check_quasi_antipode(&q, &qa).is_valid());
        // fixed point: the returned triple regenerates v
        assert_eq!(left_hopf_from_antipode(&q, &qa).unwrap().v, v, "{name}");
    }
}

#[test]
fn known_antipodes_match_classification() {
    let f = Field::Rationals;
    let q = fixtures::group_quasi(fixtures::sweedler(f));
    let a = q.algebra();
    let qa = QuasiAntipode {
        s: fixtures::sweedler_antipode(f),
        a_elem: a.unit().clone(),
        b_elem: a.unit().clone(),
    };
    let cert = left_hopf_from_antipode(&q, &qa).unwrap();
    assert_eq!(cert.v, a.tensor_unit(2));
    assert_eq!(classify_slack_structure(&q, &cert).unwrap(), Classification::LeftHopf(qa));
}

#[test]
fn slack_only_structures_have_invertible_slackness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, q, v) in fixtures_with_base() {
        let moved = torsor_act(&cert_of(&q, &v), &random_unit(&q, &mut rng));
        match classify_slack_structure(&q, &cert_of(&q, &moved)).unwrap() {
            Classification::SlackOnly { invertible, .. } => assert!(invertible, "{name}"),
            Classification::LeftHopf(_) => {}
        }
    }
}
