//! Finite-dimensional algebras given by structure constants, comagma algebras,
//! and the enveloping algebra `Aᵉ = A^op ⊗ A`.
//!
//! Elements of `A` are rank-1 [`TensorElement`]s and elements of `A ⊗ A` (or
//! `Aᵉ`, which shares the carrier) are rank-2 ones. Two different products
//! live on rank-2 tensors and must not be confused:
//!
//! * the componentwise product of `A ⊗ A`: `(a⊗b)(c⊗d) = ac ⊗ bd`
//!   ([`FinDimAlgebra::tensor_mul`]);
//! * the enveloping product: `(x⊗y)·(z⊗t) = zx ⊗ yt`
//!   ([`FinDimAlgebra::env_mul`]).

use crate::error::{Error, Result};
use crate::exactlin::{solve_or_invert, Field, Inversion, LinearMap, Scalar, TensorElement};
use crate::report::ValidationReport;

/// An element of `Aᵉ`; stored as a rank-2 tensor over `A`.
pub type EnvelopingElement = TensorElement;

/// An associative unital algebra with basis `e_0..e_{n-1}` and
/// `e_i · e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDimAlgebra {
    field: Field,
    dim: usize,
    basis_names: Vec<String>,
    mult: TensorElement,
    unit: TensorElement,
    /// nonzero `(k, c[i][j][k])` for the pair at `i * n + j`
    table: Vec<Vec<(usize, Scalar)>>,
}

impl FinDimAlgebra {
    /// Builds and validates an algebra; fails with `InvalidStructure` when an
    /// axiom is violated.
    pub fn new(
        basis_names: Vec<String>,
        mult: TensorElement,
        unit: TensorElement,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(basis_names, mult, unit)?;
        let report = validate_algebra(&alg);
        if !report.is_valid() {
            return Err(Error::InvalidStructure(report));
        }
        Ok(alg)
    }

    /// Builds an algebra checking only shapes; use [`validate_algebra`] to
    /// inspect the axioms.
    pub fn new_unchecked(
        basis_names: Vec<String>,
        mult: TensorElement,
        unit: TensorElement,
    ) -> Result<Self> {
        let dim = basis_names.len();
        if mult.rank() != 3 || mult.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor must have rank 3 over dimension {dim}"
            )));
        }
        if unit.rank() != 1 || unit.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit must be a vector of dimension {dim}"
            )));
        }
        if mult.field() != unit.field() {
            return Err(Error::FieldMismatch(
                mult.field().to_string(),
                unit.field().to_string(),
            ));
        }
        let mut table = vec![Vec::new(); dim * dim];
        for (idx, c) in mult.terms() {
            table[idx[0] * dim + idx[1]].push((idx[2], c.clone()));
        }
        Ok(Self {
            field: mult.field(),
            dim,
            basis_names,
            mult,
            unit,
            table,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &TensorElement {
        &self.mult
    }

    pub fn unit(&self) -> &TensorElement {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> TensorElement {
        TensorElement::basis(self.field, self.dim, &[i])
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement::zeros(self.field, 1, self.dim)
    }

    /// `Σ coeffs[i] e_i`.
    pub fn element(&self, coeffs: &[Scalar]) -> Result<TensorElement> {
        TensorElement::from_coeffs(self.field, 1, self.dim, coeffs.to_vec())
    }

    /// `1 ⊗ … ⊗ 1` (k factors).
    pub fn tensor_unit(&self, k: usize) -> TensorElement {
        let units: Vec<&TensorElement> = std::iter::repeat_n(&self.unit, k).collect();
        TensorElement::pure(&units)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    /// Product in `A`.
    pub fn mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        self.tensor_mul_with(x, y, &[false])
    }

    /// Product of several elements of `A`, left to right.
    pub fn mul_all(&self, factors: &[&TensorElement]) -> TensorElement {
        factors
            .iter()
            .fold(self.unit.clone(), |acc, f| self.mul(&acc, f))
    }

    /// Componentwise product in `A^{⊗k}`.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let plain = vec![false; x.rank()];
        self.tensor_mul_with(x, y, &plain)
    }

    /// Product in `Aᵉ = A^op ⊗ A`: `(x⊗y)·(z⊗t) = zx ⊗ yt`.
    pub fn env_mul(&self, x: &EnvelopingElement, y: &EnvelopingElement) -> EnvelopingElement {
        self.tensor_mul_with(x, y, &[true, false])
    }

    /// Componentwise product where slot `s` uses the opposite product when
    /// `opposite[s]` is set.
    pub fn tensor_mul_with(
        &self,
        x: &TensorElement,
        y: &TensorElement,
        opposite: &[bool],
    ) -> TensorElement {
        assert_eq!(x.rank(), y.rank(), "product of tensors of different rank");
        assert_eq!(x.rank(), opposite.len());
        assert_eq!(x.dim(), self.dim);
        assert_eq!(y.dim(), self.dim);
        let k = x.rank();
        let n = self.dim;
        let mut out = TensorElement::zeros(self.field, k, n);
        let ys: Vec<(Vec<usize>, Scalar)> = y.terms().map(|(i, c)| (i, c.clone())).collect();
        let mut partial: Vec<(Vec<usize>, Scalar)> = Vec::new();
        let mut next: Vec<(Vec<usize>, Scalar)> = Vec::new();
        for (xi, a) in x.terms() {
            for (yi, b) in &ys {
                partial.clear();
                partial.push((Vec::with_capacity(k), a * b));
                for s in 0..k {
                    let pair = if opposite[s] {
                        yi[s] * n + xi[s]
                    } else {
                        xi[s] * n + yi[s]
                    };
                    next.clear();
                    for (idx, c) in &partial {
                        for (kk, ck) in &self.table[pair] {
                            let mut idx2 = idx.clone();
                            idx2.push(*kk);
                            next.push((idx2, c * ck));
                        }
                    }
                    std::mem::swap(&mut partial, &mut next);
                    if partial.is_empty() {
                        break;
                    }
                }
                for (idx, c) in &partial {
                    out.add_at(idx, c);
                }
            }
        }
        out
    }

    /// Multiplies out the slots of a tensor: `Σ t_I e_{I_1} ⋯ e_{I_k}`.
    pub fn collapse(&self, t: &TensorElement) -> TensorElement {
        let mut out = self.zero();
        for (idx, c) in t.terms() {
            let mut acc = self.basis(idx[0]);
            for &i in &idx[1..] {
                acc = self.mul(&acc, &self.basis(i));
            }
            out = out.add(&acc.scale(c)).expect("same shape");
        }
        out
    }

    /// `Σ t_ij e_i · mid · e_j` for a rank-2 tensor `t`.
    pub fn sandwich(&self, t: &TensorElement, mid: &TensorElement) -> TensorElement {
        let mut out = self.zero();
        for (idx, c) in t.terms() {
            let p = self.mul_all(&[&self.basis(idx[0]), mid, &self.basis(idx[1])]);
            out = out.add(&p.scale(c)).expect("same shape");
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_regular(&self, x: &TensorElement) -> LinearMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(x, &self.basis(j)).into_coeffs())
            .collect();
        LinearMap::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_regular(&self, x: &TensorElement) -> LinearMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(&self.basis(j), x).into_coeffs())
            .collect();
        LinearMap::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Inverse in `A`, decided by the left regular representation.
    pub fn invert(&self, x: &TensorElement) -> Option<TensorElement> {
        invert_via(&self.left_regular(x), &self.unit)
    }

    /// Matrix of `ξ ↦ x·ξ` in `Aᵉ` (`n² x n²`).
    pub fn env_left_regular(&self, x: &EnvelopingElement) -> LinearMap {
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n * n)
            .map(|j| {
                let b = TensorElement::basis(self.field, n, &[j / n, j % n]);
                self.env_mul(x, &b).into_coeffs()
            })
            .collect();
        LinearMap::from_columns(self.field, n * n, &cols).expect("square")
    }

    /// Matrix of `ξ ↦ t·ξ` in `A ⊗ A` with its componentwise product.
    pub fn tensor_left_regular(&self, t: &TensorElement) -> LinearMap {
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n * n)
            .map(|j| {
                let b = TensorElement::basis(self.field, n, &[j / n, j % n]);
                self.tensor_mul(t, &b).into_coeffs()
            })
            .collect();
        LinearMap::from_columns(self.field, n * n, &cols).expect("square")
    }

    /// Inverse in `A ⊗ A` for the componentwise product.
    pub fn tensor_invert(&self, t: &TensorElement) -> Option<TensorElement> {
        invert_via(&self.tensor_left_regular(t), &self.tensor_unit(2))
    }

    /// Rank-2 tensor from a flat coefficient vector of length `n²`.
    pub fn rank2(&self, coeffs: Vec<Scalar>) -> Result<TensorElement> {
        TensorElement::from_coeffs(self.field, 2, self.dim, coeffs)
    }
}

fn invert_via(regular: &LinearMap, unit: &TensorElement) -> Option<TensorElement> {
    match solve_or_invert(regular).expect("regular matrices are square") {
        Inversion::Inverse(inv) => {
            let coeffs = inv.apply(unit.coeffs()).expect("dimensions agree");
            Some(
                TensorElement::from_coeffs(unit.field(), unit.rank(), unit.dim(), coeffs)
                    .expect("shape preserved"),
            )
        }
        Inversion::Singular(_) => None,
    }
}

/// Checks associativity on all basis triples and the unit law on all basis
/// elements. Violations are listed, not raised.
pub fn validate_algebra(a: &FinDimAlgebra) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = a.dim();
    let e: Vec<TensorElement> = (0..n).map(|i| a.basis(i)).collect();
    let mut assoc = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = a.mul(&e[i], &e[j]);
            for k in 0..n {
                let lhs = a.mul(&ij, &e[k]);
                let rhs = a.mul(&e[i], &a.mul(&e[j], &e[k]));
                if lhs != rhs {
                    assoc.push(format!(
                        "({}·{})·{} != {}·({}·{})",
                        a.name(i),
                        a.name(j),
                        a.name(k),
                        a.name(i),
                        a.name(j),
                        a.name(k)
                    ));
                }
            }
        }
    }
    report.family("associativity", assoc);
    let mut unit = Vec::new();
    for (i, ei) in e.iter().enumerate() {
        if a.mul(a.unit(), ei) != *ei {
            unit.push(format!("1·{} != {}", a.name(i), a.name(i)));
        }
        if a.mul(ei, a.unit()) != *ei {
            unit.push(format!("{}·1 != {}", a.name(i), a.name(i)));
        }
    }
    report.family("unit", unit);
    report
}

/// Inverse of `x` in `Aᵉ`, or `None`. A one-sided inverse in a
/// finite-dimensional algebra is two-sided.
pub fn env_invert(a: &FinDimAlgebra, x: &EnvelopingElement) -> Option<EnvelopingElement> {
    let inv = invert_via(&a.env_left_regular(x), &a.tensor_unit(2))?;
    debug_assert_eq!(a.env_mul(&inv, x), a.tensor_unit(2));
    Some(inv)
}

/// `x·y` in `Aᵉ`.
pub fn env_product(
    a: &FinDimAlgebra,
    x: &EnvelopingElement,
    y: &EnvelopingElement,
) -> Result<EnvelopingElement> {
    for t in [x, y] {
        if t.rank() != 2 || t.dim() != a.dim() || t.field() != a.field() {
            return Err(Error::DimensionMismatch(
                "enveloping elements must be rank-2 tensors over A".into(),
            ));
        }
    }
    Ok(a.env_mul(x, y))
}

/// An algebra with an algebra morphism `Δ: A → A ⊗ A` (no coassociativity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComagmaAlgebra {
    alg: FinDimAlgebra,
    delta: LinearMap,
}

impl ComagmaAlgebra {
    pub fn new(alg: FinDimAlgebra, delta: LinearMap) -> Result<Self> {
        let c = Self::new_unchecked(alg, delta)?;
        let report = validate_comagma(&c);
        if !report.is_valid() {
            return Err(Error::InvalidStructure(report));
        }
        Ok(c)
    }

    pub fn new_unchecked(alg: FinDimAlgebra, delta: LinearMap) -> Result<Self> {
        let n = alg.dim();
        if delta.rows() != n * n || delta.cols() != n || delta.field() != alg.field() {
            return Err(Error::DimensionMismatch(format!(
                "coproduct must be a {}x{n} matrix over {}",
                n * n,
                alg.field()
            )));
        }
        Ok(Self { alg, delta })
    }

    /// Builds `Δ` from its values on the basis.
    pub fn from_coproducts(alg: FinDimAlgebra, values: &[TensorElement]) -> Result<Self> {
        let n = alg.dim();
        if values.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} coproduct values for dimension {n}",
                values.len()
            )));
        }
        let cols: Vec<Vec<Scalar>> = values.iter().map(|v| v.coeffs().to_vec()).collect();
        let delta = LinearMap::from_columns(alg.field(), n * n, &cols)?;
        Self::new(alg, delta)
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.alg
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    /// `Δ(x)` as a rank-2 tensor.
    pub fn coproduct(&self, x: &TensorElement) -> TensorElement {
        let coeffs = self.delta.apply(x.coeffs()).expect("dimension checked");
        self.alg.rank2(coeffs).expect("shape")
    }
}

/// Checks `Δ(xy) = Δ(x)Δ(y)` on basis pairs and `Δ(1) = 1⊗1`.
pub fn validate_comagma(c: &ComagmaAlgebra) -> ValidationReport {
    let a = c.algebra();
    let mut report = validate_algebra(a);
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let lhs = c.coproduct(&a.mul(&ei, &ej));
            let rhs = a.tensor_mul(&c.coproduct(&ei), &c.coproduct(&ej));
            if lhs != rhs {
                mult.push(format!("Δ({0}·{1}) != Δ({0})Δ({1})", a.name(i), a.name(j)));
            }
        }
    }
    report.family("coproduct multiplicative", mult);
    report.record("coproduct unital", c.coproduct(a.unit()) == a.tensor_unit(2), || {
        "Δ(1) != 1⊗1".into()
    });
    report
}

/// `Δ_t(x) = t Δ(x) t⁻¹`, products taken in `A ⊗ A`.
pub fn conjugate_coproduct(
    c: &ComagmaAlgebra,
    t: &TensorElement,
    t_inv: &TensorElement,
) -> Result<ComagmaAlgebra> {
    let a = c.algebra();
    let one = a.tensor_unit(2);
    if a.tensor_mul(t, t_inv) != one || a.tensor_mul(t_inv, t) != one {
        return Err(Error::NotAUnit);
    }
    let values: Vec<TensorElement> = (0..a.dim())
        .map(|i| {
            let d = c.coproduct(&a.basis(i));
            a.tensor_mul(&a.tensor_mul(t, &d), t_inv)
        })
        .collect();
    ComagmaAlgebra::from_coproducts(a.clone(), &values)
}
