//! Finite-dimensional left modules, the internal Hom induced by a slack left
//! Hopf structure, comparison morphisms and left duals.
//!
//! A linear map `f: V → W` is stored as a `d_W x d_V` matrix and vectorized
//! row-major: entry `(r, c)` sits at `r·d_V + c`. With this convention the
//! canonical map `W ⊗ V* → Hom(V, W)`, `x ⊗ f ↦ x∘f`, is the identity matrix.

use crate::algebra::{env_invert, ComagmaAlgebra, EnvelopingElement, FinDimAlgebra};
use crate::bialgebra::CounitData;
use crate::error::{Error, Result};
use crate::exactlin::{solve_or_invert, Field, Inversion, LinearMap, TensorElement};
use crate::quasihopf::{slackness, QuasiBialgebra};
use crate::report::ValidationReport;
use crate::slackhopf::SlackHopfCertificate;

/// A left module: one `d x d` matrix `ρ(e_i)` per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AModule {
    field: Field,
    dim: usize,
    action: Vec<LinearMap>,
}

impl AModule {
    /// Checks `ρ(1) = id` and `ρ(e_i)ρ(e_j) = Σ_k c_ijk ρ(e_k)`.
    pub fn new(a: &FinDimAlgebra, action: Vec<LinearMap>) -> Result<Self> {
        if action.len() != a.dim() {
            return Err(Error::ModuleAxiomViolation(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                a.dim()
            )));
        }
        let dim = action.first().map_or(0, LinearMap::rows);
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ModuleAxiomViolation("action matrices must be square of equal size".into()));
        }
        let m = Self {
            field: a.field(),
            dim,
            action,
        };
        let report = module_report(a, &m);
        if let Some(bad) = report.violations().next() {
            return Err(Error::ModuleAxiomViolation(format!("{}: {}", bad.name, bad.detail)));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn action(&self) -> &[LinearMap] {
        &self.action
    }

    /// `ρ(x)` for an element `x` of `A`.
    pub fn act(&self, x: &TensorElement) -> LinearMap {
        let mut out = LinearMap::zeros(self.field, self.dim, self.dim);
        for (idx, c) in x.terms() {
            out = out.add(&self.action[idx[0]].scale(c)).expect("shape");
        }
        out
    }

    /// `ρ^{⊗k}(t)` on `V_1 ⊗ … ⊗ V_k` for a rank-k tensor `t`.
    pub fn act_tensor(modules: &[&AModule], t: &TensorElement) -> LinearMap {
        let field = t.field();
        let total: usize = modules.iter().map(|m| m.dim).product();
        let mut out = LinearMap::zeros(field, total, total);
        for (idx, c) in t.terms() {
            let mut k = LinearMap::identity(field, 1);
            for (m, &i) in modules.iter().zip(&idx) {
                k = k.kron(&m.action[i]);
            }
            out = out.add(&k.scale(c)).expect("shape");
        }
        out
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &FinDimAlgebra) -> Self {
        let action = (0..a.dim()).map(|i| a.left_regular(&a.basis(i))).collect();
        Self::new(a, action).expect("regular module")
    }

    /// The one-dimensional module of an algebra morphism `χ: A → 𝕜`.
    pub fn character(a: &FinDimAlgebra, values: &[crate::exactlin::Scalar]) -> Result<Self> {
        let action = values
            .iter()
            .map(|v| LinearMap::new(a.field(), 1, 1, vec![v.clone()]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, action)
    }

    /// The unit object `𝟙`: `𝕜` with `A` acting through `ε`.
    pub fn trivial(a: &FinDimAlgebra, eps: &CounitData) -> Self {
        Self::character(a, eps.epsilon.entries()).expect("ε is an algebra morphism")
    }

    /// `V ⊗ W` with `x` acting as `ρ_V(x₁) ⊗ ρ_W(x₂)`.
    pub fn tensor(c: &ComagmaAlgebra, v: &AModule, w: &AModule) -> Self {
        let a = c.algebra();
        let action = (0..a.dim())
            .map(|i| Self::act_tensor(&[v, w], &c.coproduct(&a.basis(i))))
            .collect();
        Self::new(a, action).expect("Δ is an algebra morphism")
    }

    /// `V ⊕ W`.
    pub fn direct_sum(a: &FinDimAlgebra, v: &AModule, w: &AModule) -> Self {
        let d = v.dim + w.dim;
        let action = (0..a.dim())
            .map(|i| {
                LinearMap::from_fn(a.field(), d, d, |r, c| {
                    if r < v.dim && c < v.dim {
                        v.action[i].get(r, c).clone()
                    } else if r >= v.dim && c >= v.dim {
                        w.action[i].get(r - v.dim, c - v.dim).clone()
                    } else {
                        a.field().zero()
                    }
                })
            })
            .collect();
        Self::new(a, action).expect("direct sum of modules")
    }
}

/// The module axioms, instance by instance.
pub fn module_report(a: &FinDimAlgebra, m: &AModule) -> ValidationReport {
    let mut r = ValidationReport::new();
    r.record("ρ(1) = id", m.act(a.unit()).is_identity(), || "ρ(1) is not the identity".into());
    let mut fails = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.action[i].compose(&m.action[j]).expect("square");
            if lhs != m.act(&a.mul(&a.basis(i), &a.basis(j))) {
                fails.push(format!("ρ({0})ρ({1}) != ρ({0}·{1})", a.name(i), a.name(j)));
            }
        }
    }
    r.family("ρ multiplicative", fails);
    r
}

/// `f ↦ f ◁ ξ = Σ ξ_ij ρ_W(e_i) f ρ_V(e_j)` on `Hom(V, W)`.
pub fn hom_right_action(v: &AModule, w: &AModule, xi: &EnvelopingElement) -> LinearMap {
    let field = xi.field();
    let n = v.dim * w.dim;
    let mut out = LinearMap::zeros(field, n, n);
    for (idx, c) in xi.terms() {
        let k = w.action[idx[0]].kron(&v.action[idx[1]].transpose());
        out = out.add(&k.scale(c)).expect("shape");
    }
    out
}

/// `[V, W]` with `a·f = f ◁ ∇(a)`, evaluation `e(f⊗x) = w¹f(w²x)` and
/// coevaluation `h(y)(x) = v¹y ⊗ v²x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalHom {
    pub source: AModule,
    pub target: AModule,
    pub module: AModule,
    /// `[V, W] ⊗ V → W`
    pub eval: LinearMap,
    /// `W → [V, W ⊗ V]`
    pub coeval: LinearMap,
}

fn hom_module(a: &FinDimAlgebra, cert: &SlackHopfCertificate, v: &AModule, w: &AModule) -> Result<AModule> {
    let action = (0..a.dim())
        .map(|i| hom_right_action(v, w, &cert.nabla_of(&a.basis(i))))
        .collect();
    AModule::new(a, action)
}

fn eval_map(v: &AModule, w: &AModule, wt: &TensorElement) -> LinearMap {
    let (dv, dw) = (v.dim, w.dim);
    let field = wt.field();
    let mut e = LinearMap::zeros(field, dw, dw * dv * dv);
    for (idx, c) in wt.terms() {
        let (rw, rv) = (&w.action[idx[0]], &v.action[idx[1]]);
        // w¹ E_rc w²: column (r·d_V + col)·d_V + x gets ρ_W(w¹)[:, r]·ρ_V(w²)[col, x]
        for r in 0..dw {
            for col in 0..dv {
                for x in 0..dv {
                    let s = rv.get(col, x);
                    if s.is_zero() {
                        continue;
                    }
                    let j = (r * dv + col) * dv + x;
                    for out in 0..dw {
                        let val = e.get(out, j) + &(&(c * s) * rw.get(out, r));
                        e.set(out, j, val);
                    }
                }
            }
        }
    }
    e
}

fn coeval_map(v: &AModule, w: &AModule, vt: &TensorElement) -> LinearMap {
    let (dv, dw) = (v.dim, w.dim);
    let field = vt.field();
    let mut h = LinearMap::zeros(field, dw * dv * dv, dw);
    for (idx, c) in vt.terms() {
        let (rw, rv) = (&w.action[idx[0]], &v.action[idx[1]]);
        for y in 0..dw {
            for p in 0..dw {
                let a = rw.get(p, y);
                if a.is_zero() {
                    continue;
                }
                for q in 0..dv {
                    for x in 0..dv {
                        let row = (p * dv + q) * dv + x;
                        let val = h.get(row, y) + &(&(c * a) * rv.get(q, x));
                        h.set(row, y, val);
                    }
                }
            }
        }
    }
    h
}

/// Builds `[V, W]` and checks that evaluation and coevaluation are `A`-linear.
pub fn internal_hom(
    c: &ComagmaAlgebra,
    cert: &SlackHopfCertificate,
    v: &AModule,
    w: &AModule,
) -> Result<InternalHom> {
    let a = c.algebra();
    let module = hom_module(a, cert, v, w)?;
    let eval = eval_map(v, w, &cert.w);
    let coeval = coeval_map(v, w, &cert.v);
    let hv = AModule::tensor(c, &module, v);
    let wv = AModule::tensor(c, w, v);
    let target_hom = hom_module(a, cert, v, &wv)?;
    for i in 0..a.dim() {
        let lhs = eval.compose(&hv.action[i])?;
        let rhs = w.action[i].compose(&eval)?;
        if lhs != rhs {
            return Err(Error::ModuleAxiomViolation(format!(
                "evaluation is not A-linear at {}",
                a.name(i)
            )));
        }
        if coeval.compose(&w.action[i])? != target_hom.action[i].compose(&coeval)? {
            return Err(Error::ModuleAxiomViolation(format!(
                "coevaluation is not A-linear at {}",
                a.name(i)
            )));
        }
    }
    Ok(InternalHom {
        source: v.clone(),
        target: w.clone(),
        module,
        eval,
        coeval,
    })
}

/// The two triangle identities of `− ⊗ V ⊣ [V, −]` at `W`:
/// `e_{W⊗V} ∘ (h_W ⊗ V) = id` and `[V, e_W] ∘ h_{[V,W]} = id`.
pub fn triangle_identities(
    c: &ComagmaAlgebra,
    cert: &SlackHopfCertificate,
    v: &AModule,
    w: &AModule,
) -> Result<ValidationReport> {
    let field = c.field();
    let dv = v.dim;
    let hom_w = hom_module(c.algebra(), cert, v, w)?;
    let wv = AModule::tensor(c, w, v);
    let eval_w = eval_map(v, w, &cert.w);
    let first = eval_map(v, &wv, &cert.w)
        .compose(&coeval_map(v, w, &cert.v).kron(&LinearMap::identity(field, dv)))?;
    let post = eval_w.kron(&LinearMap::identity(field, dv));
    let second = post.compose(&coeval_map(v, &hom_w, &cert.v))?;
    let mut r = ValidationReport::new();
    r.record("e ∘ (h ⊗ V) = id", first.is_identity(), || format!("got\n{first}"));
    r.record("[V, e] ∘ h = id", second.is_identity(), || format!("got\n{second}"));
    Ok(r)
}

/// `c_{V,W}: W ⊗ V* → Hom(V, W)`, `x⊗f ↦ (x∘f) ◁ sl(v)`.
pub fn comparison_morphism(
    q: &QuasiBialgebra,
    cert: &SlackHopfCertificate,
    v: &AModule,
    w: &AModule,
) -> Result<LinearMap> {
    let sl = slackness(q, cert)?;
    Ok(hom_right_action(v, w, &sl.value))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualOutcome {
    Dual {
        module: AModule,
        /// `ˇV ⊗ V → 𝟙`, `f⊗x ↦ f(𝔞x)`
        ev: LinearMap,
        /// `𝟙 → V ⊗ ˇV`
        coev: LinearMap,
    },
    NoDual,
}

/// The left dual `ˇV = [V, 𝟙]` when `sl(v)` is a unit of `Aᵉ`. The
/// coevaluation is `c_{V,V}⁻¹(ρ(𝔟))`; both zig-zag identities, with the
/// associator inserted, are checked.
pub fn left_dual(q: &QuasiBialgebra, cert: &SlackHopfCertificate, v: &AModule) -> Result<DualOutcome> {
    let a = q.algebra();
    let sl = slackness(q, cert)?;
    if env_invert(a, &sl.value).is_none() {
        return Ok(DualOutcome::NoDual);
    }
    let one = AModule::trivial(a, &q.eps);
    let hom = internal_hom(&q.comagma, cert, v, &one)?;
    let comparison = hom_right_action(v, v, &sl.value);
    let Inversion::Inverse(c_inv) = solve_or_invert(&comparison)? else {
        return Err(Error::IdentityViolation("comparison map is singular".into()));
    };
    let b_elem = q.eps.left_leg(&cert.v);
    let coev_vec = c_inv.apply(v.act(&b_elem).entries())?;
    let coev = LinearMap::new(a.field(), coev_vec.len(), 1, coev_vec)?;
    let (z1, z2) = zigzags(q, v, &hom.module, &hom.eval, &coev, true)?;
    if !z1.is_identity() || !z2.is_identity() {
        return Err(Error::IdentityViolation("zig-zag identities fail".into()));
    }
    Ok(DualOutcome::Dual {
        module: hom.module,
        ev: hom.eval,
        coev,
    })
}

/// `(V ⊗ ev) ∘ φ ∘ (coev ⊗ V)` on `V` and `(ev ⊗ ˇV) ∘ φ⁻¹ ∘ (ˇV ⊗ coev)`
/// on `ˇV`; with `with_associator = false` the associator is left out.
pub fn zigzags(
    q: &QuasiBialgebra,
    v: &AModule,
    dual: &AModule,
    ev: &LinearMap,
    coev: &LinearMap,
    with_associator: bool,
) -> Result<(LinearMap, LinearMap)> {
    let field = q.algebra().field();
    let (dv, dd) = (v.dim, dual.dim);
    let (phi, phi_inv) = if with_associator {
        (
            AModule::act_tensor(&[v, dual, v], &q.phi),
            AModule::act_tensor(&[dual, v, dual], &q.phi_inv),
        )
    } else {
        (
            LinearMap::identity(field, dv * dd * dv),
            LinearMap::identity(field, dd * dv * dd),
        )
    };
    let z1 = LinearMap::identity(field, dv)
        .kron(ev)
        .compose(&phi)?
        .compose(&coev.kron(&LinearMap::identity(field, dv)))?;
    let z2 = ev
        .kron(&LinearMap::identity(field, dd))
        .compose(&phi_inv)?
        .compose(&LinearMap::identity(field, dd).kron(coev))?;
    Ok((z1, z2))
}
