use std::fmt;

use super::linmap::LinearMap;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// An element of `A^{⊗k}` for an `n`-dimensional space `A`, stored densely.
///
/// The coefficient of `e_{i_1} ⊗ … ⊗ e_{i_k}` lives at the row-major flat
/// index `Σ i_j · n^{k-j}`. Rank 0 is a scalar (one coefficient); it only
/// arises from contracting every slot to the ground field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    field: Field,
    rank: usize,
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl TensorElement {
    pub fn zeros(field: Field, rank: usize, dim: usize) -> Self {
        Self {
            field,
            rank,
            dim,
            coeffs: vec![field.zero(); dim.pow(rank as u32)],
        }
    }

    pub fn from_coeffs(field: Field, rank: usize, dim: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != dim.pow(rank as u32) {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for rank {rank} over dimension {dim}",
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Self {
            field,
            rank,
            dim,
            coeffs,
        })
    }

    /// The pure basis tensor `e_{idx[0]} ⊗ … ⊗ e_{idx[k-1]}`.
    pub fn basis(field: Field, dim: usize, idx: &[usize]) -> Self {
        let mut t = Self::zeros(field, idx.len(), dim);
        let flat = t.flat_index(idx);
        t.coeffs[flat] = field.one();
        t
    }

    /// `x_1 ⊗ … ⊗ x_k` for rank-1 factors.
    pub fn pure(factors: &[&TensorElement]) -> Self {
        let first = factors.first().expect("at least one factor");
        factors[1..]
            .iter()
            .fold((*first).clone(), |acc, f| acc.outer(f))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank];
        for slot in (0..self.rank).rev() {
            idx[slot] = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.coeffs[self.flat_index(idx)]
    }

    pub fn add_at(&mut self, idx: &[usize], c: &Scalar) {
        let flat = self.flat_index(idx);
        self.coeffs[flat] = &self.coeffs[flat] + c;
    }

    /// Nonzero coefficients with their multi-indices.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.multi_index(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check_shape(&self, other: &TensorElement) -> Result<()> {
        if (self.rank, self.dim, self.field) != (other.rank, other.dim, other.field) {
            return Err(Error::DimensionMismatch(format!(
                "rank {} dim {} vs rank {} dim {}",
                self.rank, self.dim, other.rank, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_shape(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_shape(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    /// Tensor (outer) product; ranks add.
    pub fn outer(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.dim, other.dim, "outer product of different dimensions");
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for a in &self.coeffs {
            for b in &other.coeffs {
                coeffs.push(if a.is_zero() { self.field.zero() } else { a * b });
            }
        }
        Self {
            field: self.field,
            rank: self.rank + other.rank,
            dim: self.dim,
            coeffs,
        }
    }

    /// Applies `map` to one slot. The map must have `dim` columns and
    /// `dim^m` rows; the slot is replaced by `m` slots (so `m = 0` contracts it
    /// to the ground field, `m = 1` is an endomorphism, `m = 2` splits it, as a
    /// coproduct does). Over a 1-dimensional space a `1 x 1` map counts as an
    /// endomorphism; use [`TensorElement::contract_slot`] to drop the slot.
    pub fn apply_to_slot(&self, slot: usize, map: &LinearMap) -> Result<TensorElement> {
        let out_slots = output_slots(map.rows(), self.dim)?;
        self.apply_slot_with(slot, map, out_slots)
    }

    /// Applies a functional (`1 x dim` map) to one slot, removing it.
    pub fn contract_slot(&self, slot: usize, functional: &LinearMap) -> Result<TensorElement> {
        if functional.rows() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "functional with {} rows",
                functional.rows()
            )));
        }
        self.apply_slot_with(slot, functional, 0)
    }

    fn apply_slot_with(&self, slot: usize, map: &LinearMap, out_slots: usize) -> Result<TensorElement> {
        if slot >= self.rank {
            return Err(Error::SlotOutOfRange {
                slot,
                rank: self.rank,
            });
        }
        if map.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns on a slot of dimension {}",
                map.cols(),
                self.dim
            )));
        }
        let new_rank = self.rank - 1 + out_slots;
        let mut out = TensorElement::zeros(self.field, new_rank, self.dim);
        let mut idx_out = vec![0; new_rank];
        for (idx, c) in self.terms() {
            for r in 0..map.rows() {
                let m = map.get(r, idx[slot]);
                if m.is_zero() {
                    continue;
                }
                idx_out[..slot].copy_from_slice(&idx[..slot]);
                let mut rr = r;
                for s in (0..out_slots).rev() {
                    idx_out[slot + s] = rr % self.dim;
                    rr /= self.dim;
                }
                idx_out[slot + out_slots..].copy_from_slice(&idx[slot + 1..]);
                out.add_at(&idx_out, &(c * m));
            }
        }
        Ok(out)
    }

    /// Moves the slots into the order given by `perm`: output slot `s` takes
    /// input slot `perm[s]`.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        assert_eq!(perm.len(), self.rank);
        let mut out = TensorElement::zeros(self.field, self.rank, self.dim);
        for (idx, c) in self.terms() {
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.add_at(&new_idx, c);
        }
        out
    }

    /// The scalar of a rank-0 tensor.
    pub fn scalar(&self) -> Option<&Scalar> {
        (self.rank == 0).then(|| &self.coeffs[0])
    }
}

/// Number of tensors of the given shape over a finite field, or `None` when
/// the field is infinite or the count overflows `u64`.
pub fn tensor_count(field: Field, rank: usize, dim: usize) -> Option<u64> {
    let p = field.order()?;
    let len = u32::try_from(dim.checked_pow(rank as u32)?).ok()?;
    p.checked_pow(len)
}

/// Every tensor of the given shape over a prime field, in lexicographic order
/// of the coefficient vector (the last coefficient varies fastest).
///
/// Fails with `BoundExceeded` when the field is infinite or the count is above `bound`.
pub fn all_tensors(
    field: Field,
    rank: usize,
    dim: usize,
    bound: u64,
) -> Result<impl Iterator<Item = TensorElement>> {
    let count = match tensor_count(field, rank, dim) {
        Some(c) if c <= bound => c,
        Some(c) => {
            return Err(Error::BoundExceeded {
                candidates: c.to_string(),
                bound,
            })
        }
        None => {
            let candidates = if field.order().is_none() {
                "infinitely many".to_string()
            } else {
                format!("{}^{}", field.order().unwrap_or(0), dim.pow(rank as u32))
            };
            return Err(Error::BoundExceeded { candidates, bound });
        }
    };
    let p = field.order().expect("finite field");
    let len = dim.pow(rank as u32);
    Ok((0..count).map(move |mut code| {
        let mut coeffs = vec![field.zero(); len];
        for slot in coeffs.iter_mut().rev() {
            *slot = field.from_i64((code % p) as i64);
            code /= p;
        }
        TensorElement::from_coeffs(field, rank, dim, coeffs).expect("shape")
    }))
}

fn output_slots(rows: usize, dim: usize) -> Result<usize> {
    if dim == 1 {
        return if rows == 1 {
            Ok(1)
        } else {
            Err(Error::DimensionMismatch(format!("map with {rows} rows on a 1-dim slot")))
        };
    }
    let mut m = 0;
    let mut p = 1;
    while p < rows {
        p *= dim;
        m += 1;
    }
    if p != rows {
        return Err(Error::DimensionMismatch(format!(
            "map with {rows} rows is not a power of {dim}"
        )));
    }
    Ok(m)
}

/// Applies slot maps (endomorphisms or functionals) to a tensor.
///
/// Slots are 0-based positions in the input tensor. Functionals (`1 x n`
/// maps) remove their slot.
pub fn tensor_contract(t: &TensorElement, maps: &[(usize, &LinearMap)]) -> Result<TensorElement> {
    let mut seen = vec![false; t.rank()];
    for &(slot, map) in maps {
        if slot >= t.rank() {
            return Err(Error::SlotOutOfRange {
                slot,
                rank: t.rank(),
            });
        }
        if seen[slot] {
            return Err(Error::DimensionMismatch(format!("slot {slot} given twice")));
        }
        seen[slot] = true;
        if map.cols() != t.dim() || (map.rows() != t.dim() && map.rows() != 1) {
            return Err(Error::DimensionMismatch(format!(
                "slot map must be {0}x{0} or 1x{0}, got {1}x{2}",
                t.dim(),
                map.rows(),
                map.cols()
            )));
        }
    }
    // contract from the highest slot down so that earlier slot numbers stay valid
    let mut order: Vec<_> = maps.to_vec();
    order.sort_by_key(|m| std::cmp::Reverse(m.0));
    let mut out = t.clone();
    for (slot, map) in order {
        out = if map.rows() == t.dim() {
            out.apply_to_slot(slot, map)?
        } else {
            out.contract_slot(slot, map)?
        };
    }
    Ok(out)
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
                format!("{c}*{}", basis.join("⊗"))
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn flat_index_is_row_major() {
        let t = TensorElement::zeros(q(), 3, 4);
        assert_eq!(t.flat_index(&[1, 2, 3]), 16 + 8 + 3);
        assert_eq!(t.multi_index(27), vec![1, 2, 3]);
    }

    #[test]
    fn identity_on_a_slot_is_a_no_op() {
        let mut t = TensorElement::zeros(q(), 2, 2);
        t.add_at(&[0, 1], &q().from_i64(3));
        t.add_at(&[1, 1], &q().from_i64(-1));
        let id = LinearMap::identity(q(), 2);
        assert_eq!(tensor_contract(&t, &[(1, &id)]).unwrap(), t);
        assert_eq!(tensor_contract(&t, &[(0, &id)]).unwrap(), t);
    }

    #[test]
    fn counit_on_unit() {
        // ε(1) = ε(g) = 1 on kZ2; ε applied to slot 0 of 1⊗1 is the element 1
        let eps = LinearMap::from_fn(q(), 1, 2, |_, _| q().one());
        let one_one = TensorElement::basis(q(), 2, &[0, 0]);
        let r = tensor_contract(&one_one, &[(0, &eps)]).unwrap();
        assert_eq!(r, TensorElement::basis(q(), 2, &[0]));
    }

    #[test]
    fn full_contraction_gives_rank_zero() {
        let eps = LinearMap::from_fn(q(), 1, 2, |_, _| q().one());
        let t = TensorElement::basis(q(), 2, &[1, 0]);
        let r = tensor_contract(&t, &[(0, &eps), (1, &eps)]).unwrap();
        assert_eq!(r.scalar(), Some(&q().one()));
    }

    #[test]
    fn contraction_errors() {
        let t = TensorElement::basis(q(), 2, &[1, 0]);
        let id = LinearMap::identity(q(), 2);
        assert_eq!(
            tensor_contract(&t, &[(2, &id)]),
            Err(Error::SlotOutOfRange { slot: 2, rank: 2 })
        );
        let wrong = LinearMap::identity(q(), 3);
        assert!(matches!(
            tensor_contract(&t, &[(0, &wrong)]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(tensor_contract(&t, &[(0, &id), (0, &id)]).is_err());
    }

    #[test]
    fn splitting_a_slot() {
        // Δ(e1) = e1 ⊗ e1 on a 2-dim space, applied to slot 0 of e1 ⊗ e0
        let mut delta = LinearMap::zeros(q(), 4, 2);
        delta.set(0, 0, q().one());
        delta.set(3, 1, q().one());
        let t = TensorElement::basis(q(), 2, &[1, 0]);
        let r = t.apply_to_slot(0, &delta).unwrap();
        assert_eq!(r, TensorElement::basis(q(), 2, &[1, 1, 0]));
    }
}
