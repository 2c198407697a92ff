use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slackhopf_core::algebra::{env_invert, FinDimAlgebra};
use slackhopf_core::exactlin::{Field, LinearMap, Scalar, TensorElement};
use slackhopf_core::fixtures;
use slackhopf_core::modcat::{comparison_morphism, internal_hom, triangle_identities, AModule};
use slackhopf_core::quasihopf::{classify_slack_structure, left_hopf_from_antipode, Classification, QuasiBialgebra};
use slackhopf_core::slackhopf::{check_slack_hopf, random_tensor, torsor_act, SlackCheck, SlackHopfCertificate};

fn q() -> Field {
    Field::Rationals
}

fn cert_of(q: &QuasiBialgebra, v: &TensorElement) -> SlackHopfCertificate {
    match check_slack_hopf(&q.comagma, v).unwrap() {
        SlackCheck::Certificate(c) => c,
        SlackCheck::NotSlack(_) => panic!("not slack"),
    }
}

fn random_unit(a: &FinDimAlgebra, rng: &mut ChaCha8Rng) -> TensorElement {
    loop {
        let g = random_tensor(rng, a.field(), 2, a.dim());
        if env_invert(a, &g).is_some() {
            return g;
        }
    }
}

fn mat(rows: &[&[i64]]) -> LinearMap {
    let f = q();
    LinearMap::from_fn(f, rows.len(), rows[0].len(), |i, j| f.from_i64(rows[i][j]))
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| q().from_i64(x)).collect()
}

/// Modules of dimension at most 3 over `kZ₂`: both characters and sums.
fn kz2_modules(a: &FinDimAlgebra) -> Vec<AModule> {
    let triv = AModule::character(a, &ints(&[1, 1])).unwrap();
    let sign = AModule::character(a, &ints(&[1, -1])).unwrap();
    let reg = AModule::regular(a);
    let sum = AModule::direct_sum(a, &triv, &sign);
    let big = AModule::direct_sum(a, &reg, &sign);
    vec![triv, sign, reg, sum, big]
}

/// Modules of dimension at most 3 over Sweedler's algebra (basis 1, g, x, gx).
fn sweedler_modules(a: &FinDimAlgebra) -> Vec<AModule> {
    let chi_plus = AModule::character(a, &ints(&[1, 1, 0, 0])).unwrap();
    let chi_minus = AModule::character(a, &ints(&[1, -1, 0, 0])).unwrap();
    let proj = |s: i64| {
        let g = mat(&[&[s, 0], &[0, -s]]);
        let x = mat(&[&[0, 0], &[1, 0]]);
        let gx = g.compose(&x).unwrap();
        AModule::new(a, vec![LinearMap::identity(q(), 2), g, x, gx]).unwrap()
    };
    let (p_plus, p_minus) = (proj(1), proj(-1));
    let sum = AModule::direct_sum(a, &p_plus, &chi_minus);
    vec![chi_plus, chi_minus, p_plus, p_minus, sum]
}

fn quasi_cases() -> Vec<(&'static str, QuasiBialgebra, TensorElement, Vec<AModule>)> {
    let kq = fixtures::kz2_quasi(q());
    let kv = left_hopf_from_antipode(&kq, &fixtures::kz2_quasi_antipode(&kq)).unwrap().v;
    let kmods = kz2_modules(kq.algebra());
    let z2 = fixtures::group_quasi(fixtures::group_algebra_cyclic(q(), 2));
    let z2mods = kz2_modules(z2.algebra());
    let sw = fixtures::group_quasi(fixtures::sweedler(q()));
    let swmods = sweedler_modules(sw.algebra());
    let one = |qb: &QuasiBialgebra| qb.algebra().tensor_unit(2);
    vec![
        ("kZ2 quasi", kq, kv, kmods),
        ("Q[Z/2]", z2.clone(), one(&z2), z2mods),
        ("Sweedler", sw.clone(), one(&sw), swmods),
    ]
}

#[test]
fn comparison_is_canonical_iff_left_hopf() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, qb, v, mods) in quasi_cases() {
        let a = qb.algebra();
        let base = cert_of(&qb, &v);
        let mut structures = vec![base.clone()];
        for _ in 0..4 {
            structures.push(cert_of(&qb, &torsor_act(&base, &random_unit(a, &mut rng))));
        }
        for cert in &structures {
            let left_hopf = matches!(classify_slack_structure(&qb, cert).unwrap(), Classification::LeftHopf(_));
            let canonical = mods.iter().all(|v| {
                mods.iter()
                    .all(|w| comparison_morphism(&qb, cert, v, w).unwrap().is_identity())
            });
            assert_eq!(canonical, left_hopf, "{name}");
        }
    }
}

#[test]
fn comparison_into_the_unit_is_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, qb, v, mods) in quasi_cases() {
        let a = qb.algebra();
        let cert = cert_of(&qb, &torsor_act(&cert_of(&qb, &v), &random_unit(a, &mut rng)));
        let one = AModule::trivial(a, &qb.eps);
        for m in &mods {
            assert!(comparison_morphism(&qb, &cert, m, &one).unwrap().is_identity(), "{name}");
        }
    }
}

/// Solves `φ ρ_V(e_i) = ρ_W(e_i) φ` for all basis `e_i`.
fn module_maps(a: &FinDimAlgebra, v: &AModule, w: &AModule) -> Vec<LinearMap> {
    let (dv, dw) = (v.dim(), w.dim());
    let f = a.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..a.dim() {
        let (rv, rw) = (&v.action()[i], &w.action()[i]);
        for r in 0..dw {
            for c in 0..dv {
                // (φ ρ_V − ρ_W φ)[r, c]; unknown φ[p, q] at p·d_V + q
                let mut row = vec![f.zero(); dw * dv];
                for k in 0..dv {
                    row[r * dv + k] = &row[r * dv + k] + rv.get(k, c);
                }
                for k in 0..dw {
                    row[k * dv + c] = &row[k * dv + c] - rw.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let system = LinearMap::from_fn(f, rows.len(), dw * dv, |i, j| rows[i][j].clone());
    system
        .kernel()
        .into_iter()
        .map(|k| LinearMap::new(f, dw, dv, k).unwrap())
        .collect()
}

#[test]
fn internal_hom_is_natural_in_both_variables() {
    for (name, qb, v, mods) in quasi_cases() {
        let a = qb.algebra();
        let cert = cert_of(&qb, &v);
        let f = a.field();
        for v1 in &mods {
            for v2 in &mods {
                for phi in module_maps(a, v1, v2) {
                    for w in mods.iter().take(3) {
                        // precomposition [V2, W] → [V1, W], f ↦ f∘φ
                        let h1 = internal_hom(&qb.comagma, &cert, v1, w).unwrap().module;
                        let h2 = internal_hom(&qb.comagma, &cert, v2, w).unwrap().module;
                        let pre = LinearMap::identity(f, w.dim()).kron(&phi.transpose());
                        // postcomposition [W, V1] → [W, V2], f ↦ φ∘f
                        let k1 = internal_hom(&qb.comagma, &cert, w, v1).unwrap().module;
                        let k2 = internal_hom(&qb.comagma, &cert, w, v2).unwrap().module;
                        let post = phi.kron(&LinearMap::identity(f, w.dim()));
                        for i in 0..a.dim() {
                            assert_eq!(
                                pre.compose(&h2.action()[i]).unwrap(),
                                h1.action()[i].compose(&pre).unwrap(),
                                "{name}"
                            );
                            assert_eq!(
                                post.compose(&k1.action()[i]).unwrap(),
                                k2.action()[i].compose(&post).unwrap(),
                                "{name}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn changing_the_structure_twists_internal_homs() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (name, qb, v, mods) in quasi_cases() {
        let a = qb.algebra();
        let cert = cert_of(&qb, &v);
        for _ in 0..3 {
            let gamma = random_unit(a, &mut rng);
            let moved = cert_of(&qb, &torsor_act(&cert, &gamma));
            for v1 in &mods {
                for w in &mods {
                    let old = internal_hom(&qb.comagma, &cert, v1, w).unwrap().module;
                    let new = internal_hom(&qb.comagma, &moved, v1, w).unwrap().module;
                    // f ↦ f ◁ γ from [V, W] built on v to the one built on v ◁ γ
                    let twist = slackhopf_core::modcat::hom_right_action(v1, w, &gamma);
                    assert_eq!(twist.rank(), v1.dim() * w.dim(), "{name}");
                    for i in 0..a.dim() {
                        assert_eq!(
                            twist.compose(&old.action()[i]).unwrap(),
                            new.action()[i].compose(&twist).unwrap(),
                            "{name}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn triangles_hold_for_every_structure_and_module() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, qb, v, mods) in quasi_cases() {
        let a = qb.algebra();
        let cert = cert_of(&qb, &torsor_act(&cert_of(&qb, &v), &random_unit(a, &mut rng)));
        for v1 in mods.iter().take(3) {
            for w in mods.iter().take(3) {
                let r = triangle_identities(&qb.comagma, &cert, v1, w).unwrap();
                assert!(r.is_valid(), "{name}: {r}");
            }
        }
    }
}
