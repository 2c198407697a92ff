//! Standard small examples: group and monoid algebras, Sweedler's four
//! dimensional Hopf algebra, matrix algebras with the flip twist, and the
//! two-dimensional quasi-Hopf algebra `kZ₂` with associator `1 − 2p⊗p⊗p`.

use crate::algebra::{conjugate_coproduct, ComagmaAlgebra, FinDimAlgebra};
use crate::bialgebra::{solve_counit, CounitData};
use crate::exactlin::{Field, LinearMap, Scalar, TensorElement};
use crate::quasihopf::{check_quasi_antipode, triple_sandwich, QuasiAntipode, QuasiBialgebra};

fn build_algebra(field: Field, names: Vec<String>, products: &[(usize, usize, usize, i64)], unit: usize) -> FinDimAlgebra {
    let n = names.len();
    let mut mult = TensorElement::zeros(field, 3, n);
    for &(i, j, k, c) in products {
        mult.add_at(&[i, j, k], &field.from_i64(c));
    }
    let unit = TensorElement::basis(field, n, &[unit]);
    FinDimAlgebra::new(names, mult, unit).expect("fixture algebra is valid")
}

/// The monoid algebra with `Δ(m) = m⊗m`; `table[i][j]` is the index of the
/// product and element 0 is the unit.
pub fn monoid_algebra(field: Field, names: &[&str], table: &[Vec<usize>]) -> ComagmaAlgebra {
    let n = names.len();
    let mut products = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            products.push((i, j, k, 1));
        }
    }
    let a = build_algebra(field, names.iter().map(|s| s.to_string()).collect(), &products, 0);
    let values: Vec<TensorElement> = (0..n).map(|i| a.basis(i).outer(&a.basis(i))).collect();
    ComagmaAlgebra::from_coproducts(a, &values).expect("group-like coproduct is valid")
}

/// `k[Z/n]` with basis `1, g, g2, …`.
pub fn group_algebra_cyclic(field: Field, n: usize) -> ComagmaAlgebra {
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    monoid_algebra(field, &refs, &table)
}

/// `k[Z/2 × Z/2]`.
pub fn group_algebra_klein(field: Field) -> ComagmaAlgebra {
    let table: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    monoid_algebra(field, &["1", "a", "b", "ab"], &table)
}

/// `k[S₃]` and the index of each element's inverse. Elements are the
/// permutations of `{0,1,2}` in lexicographic order of their one-line form,
/// identity first; `(στ)(i) = σ(τ(i))`.
pub fn symmetric_group_s3(field: Field) -> (ComagmaAlgebra, Vec<usize>) {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("a permutation");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
        .collect();
    let inverse: Vec<usize> = (0..6)
        .map(|i| (0..6).find(|&j| table[i][j] == 0).expect("group"))
        .collect();
    let names: Vec<String> = perms.iter().map(|p| format!("s{}{}{}", p[0], p[1], p[2])).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    (monoid_algebra(field, &refs, &table), inverse)
}

/// The algebra of the multiplicative monoid `{1, 0}`: basis `1, z`, `z² = z`, `Δ(z) = z⊗z`.
pub fn idempotent_monoid_algebra(field: Field) -> ComagmaAlgebra {
    monoid_algebra(field, &["1", "z"], &[vec![0, 1], vec![1, 1]])
}

/// Sweedler's algebra: basis `1, g, x, gx`, `g² = 1`, `x² = 0`, `xg = −gx`,
/// `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`.
pub fn sweedler(field: Field) -> ComagmaAlgebra {
    let products = [
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (0, 3, 3, 1),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 2, 3, 1),
        (1, 3, 2, 1),
        (2, 0, 2, 1),
        (2, 1, 3, -1),
        (3, 0, 3, 1),
        (3, 1, 2, -1),
    ];
    let names = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    let a = build_algebra(field, names, &products, 0);
    let b = |i: usize, j: usize| TensorElement::basis(field, 4, &[i, j]);
    let values = vec![
        b(0, 0),
        b(1, 1),
        b(2, 0).add(&b(1, 2)).expect("shape"),
        b(3, 1).add(&b(0, 3)).expect("shape"),
    ];
    ComagmaAlgebra::from_coproducts(a, &values).expect("Sweedler coproduct is valid")
}

/// `S(g) = g`, `S(x) = −gx`, `S(gx) = x`.
pub fn sweedler_antipode(field: Field) -> LinearMap {
    let mut s = LinearMap::zeros(field, 4, 4);
    s.set(0, 0, field.one());
    s.set(1, 1, field.one());
    s.set(3, 2, field.from_i64(-1));
    s.set(2, 3, field.one());
    s
}

/// `M_m(k)` with matrix units `e_ij ↦ i·m + j`, named `e11, e12, …`.
pub fn matrix_algebra(field: Field, m: usize) -> FinDimAlgebra {
    let mut products = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                products.push((i * m + j, j * m + l, i * m + l, 1));
            }
        }
    }
    let names = (0..m * m).map(|k| format!("e{}{}", k / m + 1, k % m + 1)).collect();
    let mut mult = TensorElement::zeros(field, 3, m * m);
    for &(i, j, k, c) in &products {
        mult.add_at(&[i, j, k], &field.from_i64(c));
    }
    let mut unit = TensorElement::zeros(field, 1, m * m);
    for i in 0..m {
        unit.add_at(&[i * m + i], &field.one());
    }
    FinDimAlgebra::new(names, mult, unit).expect("matrix units")
}

/// The flip `t = Σ e_ij ⊗ e_ji` of a matrix algebra.
pub fn flip_element(a: &FinDimAlgebra) -> TensorElement {
    let m = (1..=a.dim()).find(|k| k * k == a.dim()).expect("matrix algebra");
    let mut t = TensorElement::zeros(a.field(), 2, a.dim());
    for i in 0..m {
        for j in 0..m {
            t.add_at(&[i * m + j, j * m + i], &a.field().one());
        }
    }
    t
}

/// `Δ(x) = x⊗1`.
pub fn right_unit_comagma(a: &FinDimAlgebra) -> ComagmaAlgebra {
    let values: Vec<TensorElement> = (0..a.dim()).map(|i| a.basis(i).outer(a.unit())).collect();
    ComagmaAlgebra::from_coproducts(a.clone(), &values).expect("x ↦ x⊗1 is an algebra map")
}

/// `M₂` with `Δ_t(x) = t(x⊗1)t⁻¹` for the flip `t`, which works out to `x ↦ 1⊗x`.
pub fn m2_flip_comagma(field: Field) -> ComagmaAlgebra {
    let a = matrix_algebra(field, 2);
    let t = flip_element(&a);
    conjugate_coproduct(&right_unit_comagma(&a), &t, &t).expect("t² = 1")
}

/// The counit solving `(ε⊗A)Δ = id`; panics if there is none.
pub fn standard_counit(c: &ComagmaAlgebra) -> CounitData {
    solve_counit(c).expect("fixture has a counit")
}

/// A bialgebra viewed as a quasi-bialgebra with `φ = 1⊗1⊗1`.
pub fn group_quasi(c: ComagmaAlgebra) -> QuasiBialgebra {
    let eps = standard_counit(&c);
    QuasiBialgebra::with_trivial_associator(c, eps).expect("bialgebra")
}

/// `e_i ↦ e_i⁻¹` on a group algebra.
pub fn group_inversion(c: &ComagmaAlgebra) -> LinearMap {
    let a = c.algebra();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| a.invert(&a.basis(i)).expect("group element").into_coeffs())
        .collect();
    LinearMap::from_columns(a.field(), a.dim(), &cols).expect("square")
}

/// `kZ₂` with `φ = φ⁻¹ = 1⊗1⊗1 − 2p⊗p⊗p`, `p = (1 − g)/2`. Needs odd characteristic.
pub fn kz2_quasi(field: Field) -> QuasiBialgebra {
    let c = group_algebra_cyclic(field, 2);
    let eps = standard_counit(&c);
    let a = c.algebra();
    let half = field.from_ratio(1, 2).expect("characteristic is not 2");
    let p = a.unit().sub(&a.basis(1)).expect("shape").scale(&half);
    let ppp = TensorElement::pure(&[&p, &p, &p]).scale(&field.from_i64(2));
    let phi = a.tensor_unit(3).sub(&ppp).expect("shape");
    QuasiBialgebra::new(c, eps, phi.clone(), phi).expect("kZ₂ associator is valid")
}

/// The quasi-antipode `S = id`, `𝔞 = g`, `𝔟 = 1` of [`kz2_quasi`].
pub fn kz2_quasi_antipode(q: &QuasiBialgebra) -> QuasiAntipode {
    let a = q.algebra();
    QuasiAntipode {
        s: LinearMap::identity(a.field(), 2),
        a_elem: a.basis(1),
        b_elem: a.unit().clone(),
    }
}

/// Candidate antipodes of `kZ₂` of the form `S(1) = 1`, `S(g) = αg + β`
/// with integers `α, β ∈ [−r, r]`.
pub fn kz2_antipode_candidates(field: Field, r: i64) -> Vec<LinearMap> {
    let mut out = Vec::new();
    for alpha in -r..=r {
        for beta in -r..=r {
            let mut s = LinearMap::zeros(field, 2, 2);
            s.set(0, 0, field.one());
            s.set(0, 1, field.from_i64(beta));
            s.set(1, 1, field.from_i64(alpha));
            out.push(s);
        }
    }
    out
}

/// Solves QA1–QA4 over a finite family of candidate antipodes.
///
/// For fixed `S`, QA1 and QA2 are linear in `𝔞` and `𝔟`. The solver walks
/// `𝔟` over integer combinations (coefficients in `[−r, r]`) of a basis of
/// the QA2 solutions, solves QA3 for `𝔞` inside the QA1 solutions, and keeps
/// the first triple that passes every check.
pub fn solve_quasi_antipode(q: &QuasiBialgebra, candidates: &[LinearMap], r: i64) -> Option<QuasiAntipode> {
    let a = q.algebra();
    let n = a.dim();
    let field = a.field();
    for s in candidates {
        if !crate::bialgebra::antimorphism_report(a, s, "S").is_valid() {
            continue;
        }
        // columns: image of e_k under the QA1 (resp. QA2) defect map
        let defect = |k: usize, qa1: bool| -> Vec<Scalar> {
            let m = a.basis(k);
            let mut col = Vec::with_capacity(n * n);
            for x in 0..n {
                let e = q.eps.apply(&a.basis(x));
                let mut acc = m.scale(&-&e);
                for (idx, c) in q.comagma.coproduct(&a.basis(x)).terms() {
                    let l = a.basis(idx[0]);
                    let r = a.basis(idx[1]);
                    let p = if qa1 {
                        a.mul_all(&[&crate::bialgebra::apply1(s, &l), &m, &r])
                    } else {
                        a.mul_all(&[&l, &m, &crate::bialgebra::apply1(s, &r)])
                    };
                    acc = acc.add(&p.scale(c)).expect("shape");
                }
                col.extend(acc.into_coeffs());
            }
            col
        };
        let kernel_of = |qa1: bool| -> Vec<TensorElement> {
            let cols: Vec<Vec<Scalar>> = (0..n).map(|k| defect(k, qa1)).collect();
            LinearMap::from_columns(field, n * n, &cols)
                .expect("shape")
                .kernel()
                .into_iter()
                .map(|v| a.element(&v).expect("shape"))
                .collect()
        };
        let a_basis = kernel_of(true);
        let b_basis = kernel_of(false);
        if a_basis.is_empty() || b_basis.is_empty() {
            continue;
        }
        for coeffs in integer_grid(b_basis.len(), r) {
            let mut b = a.zero();
            for (c, k) in coeffs.iter().zip(&b_basis) {
                b = b.add(&k.scale(&field.from_i64(*c))).expect("shape");
            }
            if b.is_zero() {
                continue;
            }
            let cols: Vec<Vec<Scalar>> = a_basis
                .iter()
                .map(|k| triple_sandwich(a, &q.phi, [None, Some(s), None], &b, k).into_coeffs())
                .collect();
            let m = LinearMap::from_columns(field, n, &cols).expect("shape");
            let Ok(Some(d)) = m.solve(a.unit().coeffs()) else {
                continue;
            };
            let mut a_elem = a.zero();
            for (c, k) in d.iter().zip(&a_basis) {
                a_elem = a_elem.add(&k.scale(c)).expect("shape");
            }
            let cand = QuasiAntipode {
                s: s.clone(),
                a_elem,
                b_elem: b,
            };
            if check_quasi_antipode(q, &cand).is_valid() {
                return Some(cand);
            }
        }
    }
    None
}

/// All integer vectors of length `len` with entries in `[−r, r]`, ordered
/// by the sum of absolute values and then lexicographically.
fn integer_grid(len: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| v.iter().map(|c| c.abs()).sum::<i64>());
    out
}
