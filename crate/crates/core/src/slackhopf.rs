//! Slack left Hopf structures on comagma algebras.
//!
//! For `v ∈ A ⊗ A` the map `H^v(x⊗y) = x₍₁₎v¹ ⊗ x₍₂₎v²y` is a left
//! `A`-module, right `A`-module map; `v` is a slack left Hopf structure when it
//! is bijective. Everything here is decided by exact elimination.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{env_invert, ComagmaAlgebra, EnvelopingElement, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{all_tensors, solve_or_invert, Field, Inversion, LinearMap, Scalar, TensorElement};
use crate::report::ValidationReport;

/// Default cap on the number of candidates an exhaustive search may visit.
pub const DEFAULT_MAX_EXHAUSTIVE: u64 = 1 << 20;

/// A slack left Hopf structure `v` with the exact inverse of `H^v` and the
/// data derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackHopfCertificate {
    pub v: TensorElement,
    pub hv: LinearMap,
    pub hv_inv: LinearMap,
    /// `(H^v)⁻¹(1⊗1)`
    pub w: TensorElement,
    /// `∇: A → Aᵉ`, an `n² x n` matrix
    pub nabla: LinearMap,
}

impl SlackHopfCertificate {
    /// `∇(x)` as a rank-2 tensor.
    pub fn nabla_of(&self, x: &TensorElement) -> EnvelopingElement {
        apply2(&self.nabla, x)
    }

    pub fn apply_hv(&self, t: &TensorElement) -> TensorElement {
        apply2(&self.hv, t)
    }

    pub fn apply_hv_inv(&self, t: &TensorElement) -> TensorElement {
        apply2(&self.hv_inv, t)
    }
}

/// Applies an operator on `A ⊗ A` to a rank-2 tensor.
pub(crate) fn apply2(m: &LinearMap, t: &TensorElement) -> TensorElement {
    let coeffs = m.apply(t.coeffs()).expect("dimension checked by caller");
    TensorElement::from_coeffs(t.field(), 2, t.dim(), coeffs).expect("endomorphism of A ⊗ A")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlackCheck {
    Certificate(SlackHopfCertificate),
    /// `H^v` is singular; the kernel basis witnesses it.
    NotSlack(Vec<Vec<Scalar>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    Exhaustive { bound: u64 },
    Randomized { seed: u64, max_trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SlackHopfCertificate),
    /// Only reported after a complete enumeration of `A ⊗ A`.
    NoneExists,
    /// The randomized probe ran out of trials.
    Unknown,
}

fn check_rank2(c: &ComagmaAlgebra, v: &TensorElement) -> Result<()> {
    if v.rank() != 2 || v.dim() != c.dim() {
        return Err(Error::DimensionMismatch(format!(
            "expected a rank-2 tensor over dimension {}, got rank {} over {}",
            c.dim(),
            v.rank(),
            v.dim()
        )));
    }
    if v.field() != c.field() {
        return Err(Error::FieldMismatch(v.field().to_string(), c.field().to_string()));
    }
    Ok(())
}

/// The matrix of `H^v` in the basis `e_i ⊗ e_j ↦ i·n + j`.
pub fn build_hv(c: &ComagmaAlgebra, v: &TensorElement) -> Result<LinearMap> {
    check_rank2(c, v)?;
    Ok(HvBasis::new(c).combine(v))
}

/// `H^v` is linear in `v`, so the operators `H^{e_a⊗e_b}` are computed once
/// and recombined; searches use this.
struct HvBasis {
    field: Field,
    n: usize,
    ops: Vec<LinearMap>,
}

impl HvBasis {
    fn new(c: &ComagmaAlgebra) -> Self {
        let a = c.algebra();
        let n = a.dim();
        let deltas: Vec<TensorElement> = (0..n).map(|i| c.coproduct(&a.basis(i))).collect();
        let ops = (0..n * n)
            .map(|ab| {
                let v = TensorElement::basis(a.field(), n, &[ab / n, ab % n]);
                let cols: Vec<Vec<Scalar>> = (0..n * n)
                    .map(|ij| {
                        let right = a.unit().outer(&a.basis(ij % n));
                        let dv = a.tensor_mul(&deltas[ij / n], &v);
                        a.tensor_mul(&dv, &right).into_coeffs()
                    })
                    .collect();
                LinearMap::from_columns(a.field(), n * n, &cols).expect("square")
            })
            .collect();
        Self {
            field: a.field(),
            n,
            ops,
        }
    }

    fn combine(&self, v: &TensorElement) -> LinearMap {
        let mut out = LinearMap::zeros(self.field, self.n * self.n, self.n * self.n);
        for (idx, c) in v.terms() {
            let op = &self.ops[idx[0] * self.n + idx[1]];
            out = out.add(&op.scale(c)).expect("same shape");
        }
        out
    }
}

/// Decides whether `v` is a slack left Hopf structure.
pub fn check_slack_hopf(c: &ComagmaAlgebra, v: &TensorElement) -> Result<SlackCheck> {
    let hv = build_hv(c, v)?;
    Ok(certify(c, v, hv))
}

fn certify(c: &ComagmaAlgebra, v: &TensorElement, hv: LinearMap) -> SlackCheck {
    let a = c.algebra();
    let n = a.dim();
    let hv_inv = match solve_or_invert(&hv).expect("square") {
        Inversion::Inverse(inv) => inv,
        Inversion::Singular(kernel) => return SlackCheck::NotSlack(kernel),
    };
    let w = apply2(&hv_inv, &a.tensor_unit(2));
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let vx = a.tensor_mul(v, &a.basis(i).outer(a.unit()));
            hv_inv.apply(vx.coeffs()).expect("dimension")
        })
        .collect();
    let nabla = LinearMap::from_columns(a.field(), n * n, &cols).expect("shape");
    let cert = SlackHopfCertificate {
        v: v.clone(),
        hv,
        hv_inv,
        w,
        nabla,
    };
    let report = certificate_report(c, &cert);
    assert!(report.is_valid(), "certificate invariants failed: {report}");
    SlackCheck::Certificate(cert)
}

/// The structural invariants of a certificate: exact inverse, the defining
/// formulas of `w` and `∇`, and `∇` an antihomomorphism `A → Aᵉ`.
pub fn certificate_report(c: &ComagmaAlgebra, cert: &SlackHopfCertificate) -> ValidationReport {
    let a = c.algebra();
    let n = a.dim();
    let mut r = ValidationReport::new();
    let id = LinearMap::identity(a.field(), n * n);
    let hv_ok = build_hv(c, &cert.v).map(|h| h == cert.hv).unwrap_or(false);
    r.record("H^v matches v", hv_ok, || "stored H^v is not the operator of v".into());
    let inv_ok = cert.hv.compose(&cert.hv_inv).map(|m| m == id).unwrap_or(false)
        && cert.hv_inv.compose(&cert.hv).map(|m| m == id).unwrap_or(false);
    r.record("H^v inverse", inv_ok, || "H^v · H^v_inv != id".into());
    r.record(
        "w = (H^v)⁻¹(1⊗1)",
        cert.apply_hv_inv(&a.tensor_unit(2)) == cert.w,
        || "w differs".into(),
    );
    let mut nabla_def = Vec::new();
    for i in 0..n {
        let vx = a.tensor_mul(&cert.v, &a.basis(i).outer(a.unit()));
        if cert.apply_hv_inv(&vx) != cert.nabla_of(&a.basis(i)) {
            nabla_def.push(format!("∇({})", a.name(i)));
        }
    }
    r.family("∇ definition", nabla_def);
    r.merge(nabla_antihomomorphism(a, cert));
    r
}

/// `∇(xy) = ∇(y)·∇(x)` in `Aᵉ` on basis pairs and `∇(1) = 1⊗1`.
pub fn nabla_antihomomorphism(a: &FinDimAlgebra, cert: &SlackHopfCertificate) -> ValidationReport {
    let n = a.dim();
    let mut r = ValidationReport::new();
    let nab: Vec<TensorElement> = (0..n).map(|i| cert.nabla_of(&a.basis(i))).collect();
    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = cert.nabla_of(&a.mul(&a.basis(i), &a.basis(j)));
            if lhs != a.env_mul(&nab[j], &nab[i]) {
                fails.push(format!("∇({0}·{1}) != ∇({1})·∇({0})", a.name(i), a.name(j)));
            }
        }
    }
    r.family("∇ antihomomorphism", fails);
    r.record("∇ unital", cert.nabla_of(a.unit()) == a.tensor_unit(2), || {
        "∇(1) != 1⊗1".into()
    });
    r
}

/// Searches `A ⊗ A` for a slack left Hopf structure.
pub fn find_slack_hopf(c: &ComagmaAlgebra, strategy: SearchStrategy) -> Result<SearchOutcome> {
    let basis = HvBasis::new(c);
    match strategy {
        SearchStrategy::Exhaustive { bound } => {
            for v in all_tensors(c.field(), 2, c.dim(), bound)? {
                if let SlackCheck::Certificate(cert) = certify(c, &v, basis.combine(&v)) {
                    return Ok(SearchOutcome::Found(cert));
                }
            }
            Ok(SearchOutcome::NoneExists)
        }
        SearchStrategy::Randomized { seed, max_trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..max_trials {
                let v = random_tensor(&mut rng, c.field(), 2, c.dim());
                if let SlackCheck::Certificate(cert) = certify(c, &v, basis.combine(&v)) {
                    return Ok(SearchOutcome::Found(cert));
                }
            }
            Ok(SearchOutcome::Unknown)
        }
    }
}

/// All slack left Hopf structures, by complete enumeration of `A ⊗ A`.
pub fn enumerate_slack_structures(c: &ComagmaAlgebra, bound: u64) -> Result<Vec<TensorElement>> {
    let basis = HvBasis::new(c);
    let mut found = Vec::new();
    for v in all_tensors(c.field(), 2, c.dim(), bound)? {
        if solve_or_invert(&basis.combine(&v))?.is_invertible() {
            found.push(v);
        }
    }
    Ok(found)
}

/// All units of `Aᵉ`, by complete enumeration.
pub fn enumerate_env_units(a: &FinDimAlgebra, bound: u64) -> Result<Vec<EnvelopingElement>> {
    Ok(all_tensors(a.field(), 2, a.dim(), bound)?
        .filter(|g| env_invert(a, g).is_some())
        .collect())
}

/// A tensor with independent uniform coordinates: `[-3, 3]` over Q, the whole
/// field over GF(p).
pub fn random_tensor<R: Rng>(rng: &mut R, field: Field, rank: usize, dim: usize) -> TensorElement {
    let len = dim.pow(rank as u32);
    let coeffs = (0..len)
        .map(|_| match field {
            Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        })
        .collect();
    TensorElement::from_coeffs(field, rank, dim, coeffs).expect("shape")
}

/// `v ◁ g = H^v(g)`; a right action of `(Aᵉ)ˣ` on slack structures.
pub fn torsor_act(cert: &SlackHopfCertificate, g: &EnvelopingElement) -> TensorElement {
    cert.apply_hv(g)
}

/// The identities linking `v`, `w`, `Δ` and `∇`:
/// (1) `(x⊗1)·v = H^v ∇(x)`, (2) `w·(x⊗1) = (H^v)⁻¹ Δ(x)`, (3) `H^v w = 1⊗1`,
/// (4) `(H^v)⁻¹ v = 1⊗1`, and the closed form
/// `(H^v)⁻¹(x⊗y) = ∇(x)·w·(1⊗y)`, all products in `Aᵉ`.
/// Also records whether `H^{1⊗1}` is invertible exactly when `w` is a unit of `Aᵉ`.
pub fn verify_adjoint_identities(cert: &SlackHopfCertificate, c: &ComagmaAlgebra) -> ValidationReport {
    let a = c.algebra();
    let n = a.dim();
    let one = a.tensor_unit(2);
    let mut r = ValidationReport::new();
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for i in 0..n {
        let x = a.basis(i);
        let x1 = x.outer(a.unit());
        let nab = cert.nabla_of(&x);
        if a.env_mul(&x1, &cert.v) != cert.apply_hv(&nab) {
            f1.push(format!("x = {}", a.name(i)));
        }
        if a.env_mul(&cert.w, &x1) != cert.apply_hv_inv(&c.coproduct(&x)) {
            f2.push(format!("x = {}", a.name(i)));
        }
    }
    r.family("(x⊗1)·v = H^v ∇(x)", f1);
    r.family("w·(x⊗1) = (H^v)⁻¹ Δ(x)", f2);
    r.record("H^v w = 1⊗1", cert.apply_hv(&cert.w) == one, || {
        format!("H^v w = {}", cert.apply_hv(&cert.w))
    });
    r.record("(H^v)⁻¹ v = 1⊗1", cert.apply_hv_inv(&cert.v) == one, || {
        format!("(H^v)⁻¹ v = {}", cert.apply_hv_inv(&cert.v))
    });
    let mut closed = Vec::new();
    for i in 0..n {
        let nw = a.env_mul(&cert.nabla_of(&a.basis(i)), &cert.w);
        for j in 0..n {
            let lhs = cert.apply_hv_inv(&TensorElement::basis(a.field(), n, &[i, j]));
            let rhs = a.env_mul(&nw, &a.unit().outer(&a.basis(j)));
            if lhs != rhs {
                closed.push(format!("x⊗y = {}⊗{}", a.name(i), a.name(j)));
            }
        }
    }
    r.family("(H^v)⁻¹(x⊗y) = ∇(x)·w·(1⊗y)", closed);
    let fusion_invertible = solve_or_invert(&HvBasis::new(c).combine(&one))
        .map(|inv| inv.is_invertible())
        .unwrap_or(false);
    let w_unit = env_invert(a, &cert.w).is_some();
    r.record("H^{1⊗1} invertible iff w ∈ (Aᵉ)ˣ", fusion_invertible == w_unit, || {
        format!("fusion invertible: {fusion_invertible}, w a unit: {w_unit}")
    });
    r
}

/// `Q^s(x⊗y) = ∇(x)·s·(1⊗y)` in `Aᵉ`, as an `n² x n²` matrix.
pub fn build_qs(cert: &SlackHopfCertificate, a: &FinDimAlgebra, s: &EnvelopingElement) -> LinearMap {
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|ij| {
            let ns = a.env_mul(&cert.nabla_of(&a.basis(ij / n)), s);
            a.env_mul(&ns, &a.unit().outer(&a.basis(ij % n))).into_coeffs()
        })
        .collect();
    LinearMap::from_columns(a.field(), n * n, &cols).expect("square")
}

/// Confirms by enumeration of `A ⊗ A` that `v` is the only `t` with
/// `H^t ∇(x) = (x⊗1)·t` for all `x` and `H^t w = 1⊗1`, and that `w` is the
/// only `s` with `Q^s Δ(x) = s·(x⊗1)` for all `x` and `Q^s v = 1⊗1`.
pub fn verify_vw_duality(
    cert: &SlackHopfCertificate,
    c: &ComagmaAlgebra,
    bound: u64,
) -> Result<ValidationReport> {
    let a = c.algebra();
    let n = a.dim();
    let one = a.tensor_unit(2);
    let basis = HvBasis::new(c);
    let xs: Vec<TensorElement> = (0..n).map(|i| a.basis(i)).collect();
    let nablas: Vec<TensorElement> = xs.iter().map(|x| cert.nabla_of(x)).collect();
    let deltas: Vec<TensorElement> = xs.iter().map(|x| c.coproduct(x)).collect();
    let x1s: Vec<TensorElement> = xs.iter().map(|x| x.outer(a.unit())).collect();

    let mut v_solutions = Vec::new();
    let mut w_solutions = Vec::new();
    for t in all_tensors(a.field(), 2, n, bound)? {
        let ht = basis.combine(&t);
        let solves_v = apply2(&ht, &cert.w) == one
            && (0..n).all(|i| apply2(&ht, &nablas[i]) == a.env_mul(&x1s[i], &t));
        if solves_v {
            v_solutions.push(t.clone());
        }
        let qs = build_qs(cert, a, &t);
        let solves_w = apply2(&qs, &cert.v) == one
            && (0..n).all(|i| apply2(&qs, &deltas[i]) == a.env_mul(&t, &x1s[i]));
        if solves_w {
            w_solutions.push(t);
        }
    }
    let mut r = ValidationReport::new();
    r.record(
        "v unique solution",
        v_solutions.len() == 1 && v_solutions[0] == cert.v,
        || format!("{} solutions", v_solutions.len()),
    );
    r.record(
        "w unique solution",
        w_solutions.len() == 1 && w_solutions[0] == cert.w,
        || format!("{} solutions", w_solutions.len()),
    );
    Ok(r)
}
