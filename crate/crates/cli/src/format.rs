//! Line-oriented text formats.
//!
//! Every line is `key arg arg ...`; `#` starts a comment. Header keys may
//! appear at most once, entry keys any number of times, in any order.
//! Coefficients are integers or fractions `p/q`; over GF(p) they are reduced.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use slackhopf_core::algebra::{ComagmaAlgebra, FinDimAlgebra};
use slackhopf_core::exactlin::{Field, LinearMap, Scalar, TensorElement};
use slackhopf_core::fincat::{FinCategory, FinMonoid, Morphism};

use crate::error::CliError;

struct Line<'a> {
    no: usize,
    key: &'a str,
    args: Vec<&'a str>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut words = body.split_whitespace();
            let key = words.next()?;
            Some(Line {
                no: i + 1,
                key,
                args: words.collect(),
            })
        })
        .collect()
}

fn err(line: &Line, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line: Some(line.no),
        field: line.key.to_string(),
        message: msg.into(),
    }
}

fn missing(field: &str) -> CliError {
    CliError::Parse {
        line: None,
        field: field.to_string(),
        message: "required line is missing".into(),
    }
}

struct Lines<'a> {
    lines: Vec<Line<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, known: &[&str]) -> Result<Self, CliError> {
        let lines = tokenize(text);
        if let Some(bad) = lines.iter().find(|l| !known.contains(&l.key)) {
            return Err(err(bad, format!("unknown key (expected one of: {})", known.join(", "))));
        }
        Ok(Self { lines })
    }

    fn header(&self, key: &str) -> Result<Option<&Line<'a>>, CliError> {
        let mut found = self.lines.iter().filter(|l| l.key == key);
        let first = found.next();
        if let Some(dup) = found.next() {
            return Err(err(dup, "given more than once"));
        }
        Ok(first)
    }

    fn required(&self, key: &str) -> Result<&Line<'a>, CliError> {
        self.header(key)?.ok_or_else(|| missing(key))
    }

    fn entries(&self, key: &'a str) -> impl Iterator<Item = &Line<'a>> + '_ {
        self.lines.iter().filter(move |l| l.key == key)
    }

    fn field(&self) -> Result<Field, CliError> {
        let line = self.required("field")?;
        let [name] = line.args[..] else {
            return Err(err(line, "expected `field QQ` or `field GF(p)`"));
        };
        name.parse().map_err(|e: slackhopf_core::Error| err(line, e.to_string()))
    }

    fn count(&self, key: &str) -> Result<usize, CliError> {
        let line = self.required(key)?;
        match line.args[..] {
            [n] => n.parse().map_err(|_| err(line, "expected a nonnegative integer")),
            _ => Err(err(line, "expected a single integer")),
        }
    }
}

fn parse_index(line: &Line, s: &str, bound: usize) -> Result<usize, CliError> {
    let i: usize = s.parse().map_err(|_| err(line, format!("index {s:?} is not a nonnegative integer")))?;
    if i >= bound {
        return Err(err(line, format!("index {i} out of range (dimension {bound})")));
    }
    Ok(i)
}

fn parse_scalar(line: &Line, field: Field, s: &str) -> Result<Scalar, CliError> {
    field.parse(s).map_err(|_| err(line, format!("coefficient {s:?} is not an exact number")))
}

/// Sparse coefficients of a tensor: index tuple → coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sparse {
    pub rank: usize,
    pub entries: BTreeMap<Vec<usize>, Scalar>,
}

impl Sparse {
    pub fn new(rank: usize) -> Self {
        Self {
            rank,
            entries: BTreeMap::new(),
        }
    }

    fn read(lines: &Lines, key: &str, rank: usize, dim: usize, field: Field) -> Result<Self, CliError> {
        let mut out = Self::new(rank);
        for line in lines.entries(key) {
            if line.args.len() != rank + 1 {
                return Err(err(line, format!("expected {rank} indices and a coefficient")));
            }
            let idx = line.args[..rank]
                .iter()
                .map(|s| parse_index(line, s, dim))
                .collect::<Result<Vec<_>, _>>()?;
            let c = parse_scalar(line, field, line.args[rank])?;
            if out.entries.insert(idx, c).is_some() {
                return Err(err(line, "entry given twice"));
            }
        }
        Ok(out)
    }

    /// Nonzero coefficients of `t`.
    pub fn from_tensor(t: &TensorElement) -> Self {
        Self {
            rank: t.rank(),
            entries: t.terms().map(|(idx, c)| (idx, c.clone())).collect(),
        }
    }

    /// Nonzero entries of `m` as `(column, row)` pairs: the image of basis
    /// vector `j` is `Σ_i m[i][j] e_i`.
    pub fn from_map(m: &LinearMap, out_rank: usize, dim: usize) -> Self {
        let mut out = Self::new(out_rank + 1);
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                let c = m.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut idx = vec![j];
                let mut rest = i;
                let mut tail = vec![0; out_rank];
                for slot in (0..out_rank).rev() {
                    tail[slot] = rest % dim;
                    rest /= dim;
                }
                idx.extend(tail);
                out.entries.insert(idx, c.clone());
            }
        }
        out
    }

    pub fn to_tensor(&self, field: Field, dim: usize) -> TensorElement {
        let mut t = TensorElement::zeros(field, self.rank, dim);
        for (idx, c) in &self.entries {
            t.add_at(idx, c);
        }
        t
    }

    /// Reads entries `(j, i...)` as the map sending `e_j` to `Σ c e_i...`.
    pub fn to_map(&self, field: Field, dim: usize) -> LinearMap {
        let out_rank = self.rank - 1;
        let rows = dim.pow(out_rank as u32);
        let mut m = LinearMap::zeros(field, rows, dim);
        for (idx, c) in &self.entries {
            let row = idx[1..].iter().fold(0, |acc, &i| acc * dim + i);
            let val = m.get(row, idx[0]) + c;
            m.set(row, idx[0], val);
        }
        m
    }

    fn write(&self, out: &mut String, key: &str) {
        for (idx, c) in &self.entries {
            let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{key} {} {c}", idx.join(" "));
        }
    }
}

/// An algebra with optional coproduct, counit and associator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Sparse,
    /// `(i, j, k) ↦ c`: `e_i e_j` has `c e_k`
    pub mult: Sparse,
    /// `(i, j, k) ↦ c`: `Δ(e_i)` has `c e_j⊗e_k`
    pub delta: Option<Sparse>,
    pub counit: Option<Sparse>,
    pub phi: Option<Sparse>,
    pub phi_inv: Option<Sparse>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let lines = Lines::new(
            text,
            &["field", "dim", "basis", "unit", "mult", "delta", "counit", "phi", "phi_inv"],
        )?;
        let field = lines.field()?;
        let dim = lines.count("dim")?;
        let basis_line = lines.required("basis")?;
        if basis_line.args.len() != dim {
            return Err(err(basis_line, format!("expected {dim} basis names")));
        }
        let basis = basis_line.args.iter().map(|s| s.to_string()).collect();
        let unit = Sparse::read(&lines, "unit", 1, dim, field)?;
        let mult = Sparse::read(&lines, "mult", 3, dim, field)?;
        let optional = |key: &str, rank: usize| -> Result<Option<Sparse>, CliError> {
            if lines.entries(key).next().is_none() {
                return Ok(None);
            }
            Sparse::read(&lines, key, rank, dim, field).map(Some)
        };
        let file = Self {
            field,
            dim,
            basis,
            unit,
            delta: optional("delta", 3)?,
            counit: optional("counit", 1)?,
            phi: optional("phi", 3)?,
            phi_inv: optional("phi_inv", 3)?,
            mult,
        };
        if file.phi.is_some() != file.phi_inv.is_some() {
            return Err(missing(if file.phi.is_some() { "phi_inv" } else { "phi" }));
        }
        Ok(file)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field {}", self.field);
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "basis {}", self.basis.join(" "));
        self.unit.write(&mut out, "unit");
        self.mult.write(&mut out, "mult");
        let optional = [
            ("delta", &self.delta),
            ("counit", &self.counit),
            ("phi", &self.phi),
            ("phi_inv", &self.phi_inv),
        ];
        for (key, sparse) in optional {
            if let Some(s) = sparse {
                s.write(&mut out, key);
            }
        }
        out
    }

    /// The algebra, checked for shape only.
    pub fn algebra(&self) -> Result<FinDimAlgebra, CliError> {
        let mult = self.mult.to_tensor(self.field, self.dim);
        let unit = self.unit.to_tensor(self.field, self.dim);
        Ok(FinDimAlgebra::new_unchecked(self.basis.clone(), mult, unit)?)
    }

    /// The comagma algebra, checked for shape only.
    pub fn comagma(&self) -> Result<ComagmaAlgebra, CliError> {
        let delta = self.delta.as_ref().ok_or_else(|| missing("delta"))?;
        Ok(ComagmaAlgebra::new_unchecked(self.algebra()?, delta.to_map(self.field, self.dim))?)
    }

    pub fn counit_values(&self) -> Option<Vec<Scalar>> {
        self.counit
            .as_ref()
            .map(|s| s.to_tensor(self.field, self.dim).into_coeffs())
    }
}

/// A single tensor, e.g. a candidate slack structure `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorFile {
    pub field: Field,
    pub dim: usize,
    pub entries: Sparse,
}

impl TensorFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let lines = Lines::new(text, &["field", "dim", "rank", "entry"])?;
        let field = lines.field()?;
        let dim = lines.count("dim")?;
        let rank = lines.count("rank")?;
        let entries = Sparse::read(&lines, "entry", rank, dim, field)?;
        Ok(Self { field, dim, entries })
    }

    pub fn from_tensor(t: &TensorElement) -> Self {
        Self {
            field: t.field(),
            dim: t.dim(),
            entries: Sparse::from_tensor(t),
        }
    }

    /// A linear map `A → A^{⊗k}` written as a rank `k + 1` tensor, input index first.
    pub fn from_map(m: &LinearMap, out_rank: usize, dim: usize) -> Self {
        Self {
            field: m.field(),
            dim,
            entries: Sparse::from_map(m, out_rank, dim),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field {}", self.field);
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "rank {}", self.entries.rank);
        self.entries.write(&mut out, "entry");
        out
    }

    pub fn tensor(&self) -> TensorElement {
        self.entries.to_tensor(self.field, self.dim)
    }
}

/// A candidate quasi-antipode `(S, 𝔞, 𝔟)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeFile {
    pub field: Field,
    pub dim: usize,
    /// `(i, j) ↦ c`: `S(e_i)` has `c e_j`
    pub antipode: Sparse,
    pub a: Sparse,
    pub b: Sparse,
}

impl AntipodeFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let lines = Lines::new(text, &["field", "dim", "antipode", "a", "b"])?;
        let field = lines.field()?;
        let dim = lines.count("dim")?;
        Ok(Self {
            field,
            dim,
            antipode: Sparse::read(&lines, "antipode", 2, dim, field)?,
            a: Sparse::read(&lines, "a", 1, dim, field)?,
            b: Sparse::read(&lines, "b", 1, dim, field)?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field {}", self.field);
        let _ = writeln!(out, "dim {}", self.dim);
        self.antipode.write(&mut out, "antipode");
        self.a.write(&mut out, "a");
        self.b.write(&mut out, "b");
        out
    }
}

/// A finite category; morphisms and objects are referred to by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    /// `(name, dom, cod)`
    pub morphisms: Vec<(String, String, String)>,
    /// `object → identity morphism`
    pub identities: BTreeMap<String, String>,
    /// `(g, f) ↦ g∘f`
    pub compose: BTreeMap<(String, String), String>,
}

impl CategoryFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let lines = Lines::new(text, &["objects", "morphism", "identity", "compose"])?;
        let obj_line = lines.required("objects")?;
        let objects: Vec<String> = obj_line.args.iter().map(|s| s.to_string()).collect();
        let known_object = |line: &Line, s: &str| -> Result<String, CliError> {
            if objects.iter().any(|o| o == s) {
                Ok(s.to_string())
            } else {
                Err(err(line, format!("unknown object {s:?}")))
            }
        };
        let mut morphisms: Vec<(String, String, String)> = Vec::new();
        for line in lines.entries("morphism") {
            let [name, dom, cod] = line.args[..] else {
                return Err(err(line, "expected `morphism <name> <dom> <cod>`"));
            };
            if morphisms.iter().any(|m| m.0 == name) {
                return Err(err(line, format!("morphism {name:?} declared twice")));
            }
            morphisms.push((name.to_string(), known_object(line, dom)?, known_object(line, cod)?));
        }
        let known_morphism = |line: &Line, s: &str| -> Result<String, CliError> {
            if morphisms.iter().any(|m| m.0 == s) {
                Ok(s.to_string())
            } else {
                Err(err(line, format!("unknown morphism {s:?}")))
            }
        };
        let mut identities = BTreeMap::new();
        for line in lines.entries("identity") {
            let [obj, id] = line.args[..] else {
                return Err(err(line, "expected `identity <object> <morphism>`"));
            };
            if identities.insert(known_object(line, obj)?, known_morphism(line, id)?).is_some() {
                return Err(err(line, "identity given twice"));
            }
        }
        let mut compose = BTreeMap::new();
        for line in lines.entries("compose") {
            let [g, f, h] = line.args[..] else {
                return Err(err(line, "expected `compose <g> <f> <g∘f>`"));
            };
            let key = (known_morphism(line, g)?, known_morphism(line, f)?);
            if compose.insert(key, known_morphism(line, h)?).is_some() {
                return Err(err(line, "composite given twice"));
            }
        }
        Ok(Self {
            objects,
            morphisms,
            identities,
            compose,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "objects {}", self.objects.join(" "));
        for (name, dom, cod) in &self.morphisms {
            let _ = writeln!(out, "morphism {name} {dom} {cod}");
        }
        for (obj, id) in &self.identities {
            let _ = writeln!(out, "identity {obj} {id}");
        }
        for ((g, f), h) in &self.compose {
            let _ = writeln!(out, "compose {g} {f} {h}");
        }
        out
    }

    pub fn category(&self) -> Result<FinCategory, CliError> {
        let obj = |s: &str| self.objects.iter().position(|o| o == s).expect("checked on parse");
        let mor = |s: &str| self.morphisms.iter().position(|m| m.0 == s).expect("checked on parse");
        let morphisms = self
            .morphisms
            .iter()
            .map(|(name, dom, cod)| Morphism {
                name: name.clone(),
                dom: obj(dom),
                cod: obj(cod),
            })
            .collect();
        let identities = self
            .objects
            .iter()
            .map(|o| {
                self.identities.get(o).map(|id| mor(id)).ok_or_else(|| CliError::Parse {
                    line: None,
                    field: "identity".into(),
                    message: format!("object {o:?} has no identity"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let composites: Vec<(usize, usize, usize)> = self
            .compose
            .iter()
            .map(|((g, f), h)| (mor(g), mor(f), mor(h)))
            .collect();
        Ok(FinCategory::new(self.objects.clone(), morphisms, identities, &composites)?)
    }
}

/// A finite monoid given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub unit: String,
    /// `(x, y) ↦ x·y`
    pub op: BTreeMap<(String, String), String>,
}

impl MonoidFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let lines = Lines::new(text, &["elements", "unit", "op"])?;
        let el_line = lines.required("elements")?;
        let elements: Vec<String> = el_line.args.iter().map(|s| s.to_string()).collect();
        let known = |line: &Line, s: &str| -> Result<String, CliError> {
            if elements.iter().any(|e| e == s) {
                Ok(s.to_string())
            } else {
                Err(err(line, format!("unknown element {s:?}")))
            }
        };
        let unit_line = lines.required("unit")?;
        let [u] = unit_line.args[..] else {
            return Err(err(unit_line, "expected `unit <element>`"));
        };
        let unit = known(unit_line, u)?;
        let mut op = BTreeMap::new();
        for line in lines.entries("op") {
            let [x, y, z] = line.args[..] else {
                return Err(err(line, "expected `op <x> <y> <x·y>`"));
            };
            if op.insert((known(line, x)?, known(line, y)?), known(line, z)?).is_some() {
                return Err(err(line, "product given twice"));
            }
        }
        let k = elements.len();
        if op.len() != k * k {
            return Err(CliError::Parse {
                line: None,
                field: "op".into(),
                message: format!("the table needs all {} products, found {}", k * k, op.len()),
            });
        }
        Ok(Self { elements, unit, op })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "elements {}", self.elements.join(" "));
        let _ = writeln!(out, "unit {}", self.unit);
        for ((x, y), z) in &self.op {
            let _ = writeln!(out, "op {x} {y} {z}");
        }
        out
    }

    pub fn monoid(&self) -> Result<FinMonoid, CliError> {
        let idx = |s: &str| self.elements.iter().position(|e| e == s).expect("checked on parse");
        let table = self
            .elements
            .iter()
            .map(|x| self.elements.iter().map(|y| idx(&self.op[&(x.clone(), y.clone())])).collect())
            .collect();
        Ok(FinMonoid::new(self.elements.clone(), table, idx(&self.unit))?)
    }
}
