//! Finite categories and monoids, and the slack Hopf criterion for the monad
//! they induce: a family `(a_s, b_s)` of endomorphisms works when
//! `(f, g) ↦ (f∘a_t, f∘b_t∘g)` is a bijection
//! `A(t,s) × A(u,t) → A(t,s) × A(u,s)` for all objects `s, t, u`.
//! Such a family exists exactly for groupoids.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. Morphisms are numbered; `compose(g, f)` is `g∘f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `g∘f` at `g * m + f`, defined when `cod f = dom g`
    table: Vec<Option<usize>>,
}

impl FinCategory {
    /// `composites` lists `(g, f, g∘f)`; composites with an identity may be
    /// omitted and are filled in.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let mut report = ValidationReport::new();
        let in_range = morphisms
            .iter()
            .all(|f| f.dom < objects.len() && f.cod < objects.len())
            && identities.len() == objects.len()
            && identities.iter().all(|&i| i < m)
            && composites.iter().all(|&(g, f, h)| g < m && f < m && h < m);
        if !in_range {
            report.fail("indices", "object or morphism index out of range");
            return Err(Error::InvalidStructure(report));
        }
        let mut table = vec![None; m * m];
        for (s, &id) in identities.iter().enumerate() {
            if morphisms[id].dom != s || morphisms[id].cod != s {
                report.fail("identity type", format!("identity of {} is not an endomorphism of it", objects[s]));
            }
            for (f, mf) in morphisms.iter().enumerate() {
                if mf.cod == s {
                    table[id * m + f] = Some(f);
                }
                if mf.dom == s {
                    table[f * m + id] = Some(f);
                }
            }
        }
        for &(g, f, h) in composites {
            let (mg, mf, mh) = (&morphisms[g], &morphisms[f], &morphisms[h]);
            if mf.cod != mg.dom || mh.dom != mf.dom || mh.cod != mg.cod {
                report.fail("composite type", format!("{}∘{} = {} is ill-typed", mg.name, mf.name, mh.name));
                continue;
            }
            match table[g * m + f] {
                Some(existing) if existing != h => report.fail(
                    "composite unique",
                    format!("{}∘{} given twice with different values", mg.name, mf.name),
                ),
                _ => table[g * m + f] = Some(h),
            }
        }
        let cat = Self {
            objects,
            morphisms,
            identities,
            table,
        };
        report.merge(cat.axiom_report());
        if !report.is_valid() {
            return Err(Error::InvalidStructure(report));
        }
        Ok(cat)
    }

    fn axiom_report(&self) -> ValidationReport {
        let m = self.morphisms.len();
        let mut r = ValidationReport::new();
        let mut missing = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if self.morphisms[f].cod == self.morphisms[g].dom && self.table[g * m + f].is_none() {
                    missing.push(format!("{}∘{}", self.morphisms[g].name, self.morphisms[f].name));
                }
            }
        }
        r.family("composition total", missing);
        if !r.is_valid() {
            return r;
        }
        let mut assoc = Vec::new();
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = self.compose(h, g) else { continue };
                for f in 0..m {
                    let Some(gf) = self.compose(g, f) else { continue };
                    if self.compose(hg, f) != self.compose(h, gf) {
                        assoc.push(format!(
                            "({}∘{})∘{}",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        ));
                    }
                }
            }
        }
        r.family("associativity", assoc);
        r
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, s: usize) -> usize {
        self.identities[s]
    }

    /// `g∘f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f]
    }

    /// `A(t, s)`: morphisms `t → s`, in index order.
    pub fn hom(&self, t: usize, s: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].dom == t && self.morphisms[f].cod == s)
            .collect()
    }

    /// The one-object category of a monoid.
    pub fn from_monoid(m: &FinMonoid) -> Self {
        let k = m.order();
        let morphisms = (0..k)
            .map(|i| Morphism {
                name: m.elements[i].clone(),
                dom: 0,
                cod: 0,
            })
            .collect();
        let mut composites = Vec::new();
        for g in 0..k {
            for f in 0..k {
                composites.push((g, f, m.op(g, f)));
            }
        }
        Self::new(vec!["*".into()], morphisms, vec![m.unit], &composites).expect("monoid")
    }

    /// The category of a finite preorder: one arrow `t → s` when `le(t, s)`.
    pub fn preorder(names: &[&str], le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let k = names.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for t in 0..k {
            for s in 0..k {
                if le(t, s) {
                    index.insert((t, s), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{}->{}", names[t], names[s]),
                        dom: t,
                        cod: s,
                    });
                }
            }
        }
        let identities = (0..k)
            .map(|s| {
                index.get(&(s, s)).copied().ok_or_else(|| {
                    Error::InvalidStructure({
                        let mut r = ValidationReport::new();
                        r.fail("reflexive", format!("{} is not related to itself", names[s]));
                        r
                    })
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut composites = Vec::new();
        for (&(t, u), &f) in &index {
            for s in 0..k {
                if let Some(&g) = index.get(&(u, s)) {
                    let h = index.get(&(t, s)).copied().ok_or_else(|| {
                        let mut r = ValidationReport::new();
                        r.fail("transitive", format!("{} ≤ {} ≤ {}", names[t], names[u], names[s]));
                        Error::InvalidStructure(r)
                    })?;
                    composites.push((g, f, h));
                }
            }
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), morphisms, identities, &composites)
    }

    /// The action groupoid of a group (given by its table, unit 0) acting on
    /// `points` via `act[g][x]`: an arrow `x → g·x` for each `(g, x)`.
    pub fn action_groupoid(group: &FinMonoid, points: usize, act: &[Vec<usize>]) -> Result<Self> {
        let k = group.order();
        let id = |g: usize, x: usize| g * points + x;
        let morphisms = (0..k)
            .flat_map(|g| {
                (0..points).map(move |x| (g, x))
            })
            .map(|(g, x)| Morphism {
                name: format!("{}@{}", group.elements[g], x),
                dom: x,
                cod: act[g][x],
            })
            .collect();
        let identities = (0..points).map(|x| id(group.unit, x)).collect();
        let mut composites = Vec::new();
        for g in 0..k {
            for h in 0..k {
                for x in 0..points {
                    // (g at h·x) ∘ (h at x) = (gh at x)
                    composites.push((id(g, act[h][x]), id(h, x), id(group.op(g, h), x)));
                }
            }
        }
        let objects = (0..points).map(|x| x.to_string()).collect();
        Self::new(objects, morphisms, identities, &composites)
    }

    /// `f` has a two-sided inverse.
    pub fn is_invertible(&self, f: usize) -> bool {
        let mf = &self.morphisms[f];
        self.hom(mf.cod, mf.dom).into_iter().any(|g| {
            self.compose(g, f) == Some(self.identities[mf.dom])
                && self.compose(f, g) == Some(self.identities[mf.cod])
        })
    }
}

/// Every morphism is invertible.
pub fn is_groupoid(c: &FinCategory) -> bool {
    (0..c.morphisms.len()).all(|f| c.is_invertible(f))
}

/// Whether the endomorphism families `a`, `b` satisfy the unique-solution
/// criterion: for all `h: t → s`, `k: u → s` exactly one `(f: t → s, g: u → t)`
/// has `f∘a_t = h` and `f∘b_t∘g = k`.
pub fn category_slack_hopf(c: &FinCategory, a: &[usize], b: &[usize]) -> Result<bool> {
    let n = c.objects.len();
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch(format!("need one endomorphism per object ({n})")));
    }
    for s in 0..n {
        for &e in [a[s], b[s]].iter() {
            let me = c.morphisms.get(e).ok_or_else(|| Error::NotApplicable(format!("no morphism {e}")))?;
            if me.dom != s || me.cod != s {
                return Err(Error::NotApplicable(format!(
                    "{} is not an endomorphism of {}",
                    me.name, c.objects[s]
                )));
            }
        }
    }
    Ok(criterion_holds(c, a, b))
}

fn criterion_holds(c: &FinCategory, a: &[usize], b: &[usize]) -> bool {
    let n = c.objects.len();
    let m = c.morphisms.len();
    let homs: Vec<Vec<Vec<usize>>> = (0..n).map(|t| (0..n).map(|s| c.hom(t, s)).collect()).collect();
    let mut hits = vec![0u32; m * m];
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                let (ts, ut, us) = (&homs[t][s], &homs[u][t], &homs[u][s]);
                if ts.len() * ut.len() != ts.len() * us.len() {
                    return false;
                }
                for &f in ts {
                    let h = c.compose(f, a[t]).expect("composable");
                    let fb = c.compose(f, b[t]).expect("composable");
                    for &g in ut {
                        let k = c.compose(fb, g).expect("composable");
                        let slot = &mut hits[h * m + k];
                        *slot += 1;
                        if *slot > 1 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategorySearch {
    /// The lexicographically least family `(a, b)`.
    Witness { a: Vec<usize>, b: Vec<usize> },
    NoWitness,
}

/// Exhaustive search over all families `(a, b)` of endomorphisms.
pub fn exists_category_slack_hopf(c: &FinCategory, budget: u64) -> Result<CategorySearch> {
    let n = c.objects.len();
    let ends: Vec<Vec<usize>> = (0..n).map(|s| c.hom(s, s)).collect();
    let count = ends
        .iter()
        .try_fold(1u64, |acc, e| acc.checked_mul((e.len() as u64).pow(2)));
    match count {
        Some(k) if k <= budget => {}
        other => {
            return Err(Error::BoundExceeded {
                candidates: other.map_or("more than 2^64".into(), |k| k.to_string()),
                bound: budget,
            })
        }
    }
    // odometer over (a_0..a_{n-1}, b_0..b_{n-1}), last digit fastest
    let radices: Vec<usize> = ends.iter().chain(ends.iter()).map(Vec::len).collect();
    let mut digits = vec![0usize; 2 * n];
    loop {
        let a: Vec<usize> = (0..n).map(|s| ends[s][digits[s]]).collect();
        let b: Vec<usize> = (0..n).map(|s| ends[s][digits[n + s]]).collect();
        if criterion_holds(c, &a, &b) {
            return Ok(CategorySearch::Witness { a, b });
        }
        let mut pos = 2 * n;
        loop {
            if pos == 0 {
                return Ok(CategorySearch::NoWitness);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FinMonoid {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let k = elements.len();
        let mut r = ValidationReport::new();
        let shape_ok = unit < k && table.len() == k && table.iter().all(|row| row.len() == k && row.iter().all(|&x| x < k));
        if !shape_ok {
            r.fail("table", format!("multiplication table must be {k}x{k} with entries below {k}"));
            return Err(Error::InvalidStructure(r));
        }
        let mut unit_fails = Vec::new();
        for x in 0..k {
            if table[unit][x] != x || table[x][unit] != x {
                unit_fails.push(elements[x].clone());
            }
        }
        r.family("unit", unit_fails);
        let mut assoc = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        assoc.push(format!("({}{}){}", elements[x], elements[y], elements[z]));
                    }
                }
            }
        }
        r.family("associativity", assoc);
        if !r.is_valid() {
            return Err(Error::InvalidStructure(r));
        }
        Ok(Self { elements, table, unit })
    }

    /// `Z/n` written additively, named `0..n-1`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new((0..n).map(|i| i.to_string()).collect(), table, 0).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn is_group(&self) -> bool {
        (0..self.order()).all(|x| {
            (0..self.order()).any(|y| self.op(x, y) == self.unit && self.op(y, x) == self.unit)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoidSearch {
    /// The lexicographically least `(a, b)`.
    Witness(usize, usize),
    NoWitness,
}

/// Whether `(x, y) ↦ (xa, xby)` is a bijection of `M × M`.
pub fn monoid_map_bijective(m: &FinMonoid, a: usize, b: usize) -> bool {
    let k = m.order();
    let mut seen = vec![false; k * k];
    for x in 0..k {
        let xb = m.op(x, b);
        for y in 0..k {
            let img = m.op(x, a) * k + m.op(xb, y);
            if seen[img] {
                return false;
            }
            seen[img] = true;
        }
    }
    true
}

/// Searches all `(a, b) ∈ M²`.
pub fn monoid_slack_hopf(m: &FinMonoid) -> MonoidSearch {
    let k = m.order();
    for a in 0..k {
        for b in 0..k {
            if monoid_map_bijective(m, a, b) {
                return MonoidSearch::Witness(a, b);
            }
        }
    }
    MonoidSearch::NoWitness
}
