//! Fusion data: labels, fusion multiplicities, dimensions, recoupling and duality scalars.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::diagram::DiagramCache;
use crate::linalg::c;
use crate::{CategoryError, Result};

pub type Label = usize;

/// One index of a recoupling matrix: an intermediate label and two vertex multiplicities.
///
/// For a key `(a,d,e,c)` a column channel `(b, α, β)` names the right-nested tree
/// `(1_a ⊗ β) ∘ α` with `α ∈ C(c, a⊗b)`, `β ∈ C(b, d⊗e)`; a row channel `(f, γ, δ)`
/// names the left-nested tree `(γ ⊗ 1_e) ∘ δ` with `γ ∈ C(f, a⊗d)`, `δ ∈ C(c, f⊗e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Channel {
    pub mid: Label,
    pub m1: usize,
    pub m2: usize,
}

impl Channel {
    pub fn new(mid: Label, m1: usize, m2: usize) -> Self {
        Channel { mid, m1, m2 }
    }
}

/// `(1_a⊗β)∘α = Σ u[(f,γ,δ),(b,α,β)] (γ⊗1_e)∘δ`, plus the inverse change of basis.
#[derive(Clone, Debug)]
pub struct Recoupling {
    pub rows: Vec<Channel>,
    pub cols: Vec<Channel>,
    pub u: DMatrix<C64>,
    /// Rows indexed by `cols`, columns by `rows`: left-nested to right-nested.
    pub uinv: DMatrix<C64>,
}

impl Recoupling {
    pub fn row(&self, ch: Channel) -> Option<usize> {
        self.rows.binary_search(&ch).ok()
    }

    pub fn col(&self, ch: Channel) -> Option<usize> {
        self.cols.binary_search(&ch).ok()
    }
}

/// Duality scalars of a simple `a`: `ev_a = ev·ε_a*`, `coev_a = coev·κ_a`, `φ_a = pivotal·id_a`,
/// where `ε_a` and `κ_a = ε_ā` are the unit-norm basis vectors of `C(1, ā⊗a)` and `C(1, a⊗ā)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityData {
    pub ev: C64,
    pub coev: C64,
    pub pivotal: C64,
}

impl DualityData {
    pub fn standard(d: f64) -> Self {
        DualityData { ev: c(d.sqrt()), coev: c(d.sqrt()), pivotal: c(1.0) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecouplingForm {
    /// Matrix relating the trace-normalized trees directly.
    U,
    /// Unitary F-symbol; converted by `U = D_f^{1/2} F D_b^{-1/2}`.
    F,
}

#[derive(Clone, Debug)]
pub struct RecouplingInput {
    pub key: [Label; 4],
    pub form: RecouplingForm,
    pub rows: Vec<Channel>,
    pub cols: Vec<Channel>,
    pub matrix: DMatrix<C64>,
}

#[derive(Clone, Debug)]
pub struct FusionInput {
    pub names: Vec<String>,
    pub unit: Label,
    pub dual: Vec<Label>,
    pub dims: Vec<f64>,
    /// Nonzero multiplicities `(a, b, c, N_{ab}^c)`.
    pub fusion: Vec<(Label, Label, Label, usize)>,
    pub recoupling: Vec<RecouplingInput>,
    pub duality: Vec<DualityData>,
    pub tolerance: f64,
}

#[derive(Debug)]
pub struct FusionData {
    names: Vec<String>,
    unit: Label,
    dual: Vec<Label>,
    dims: Vec<f64>,
    n: Vec<usize>,
    recoupling: BTreeMap<[Label; 4], Recoupling>,
    duality: Vec<DualityData>,
    tolerance: f64,
    /// Largest deviation of supplied unit-leg blocks from the fixed unit convention.
    unit_leg_residual: f64,
    pub(crate) cache: DiagramCache,
}

impl Clone for FusionData {
    fn clone(&self) -> Self {
        FusionData {
            names: self.names.clone(),
            unit: self.unit,
            dual: self.dual.clone(),
            dims: self.dims.clone(),
            n: self.n.clone(),
            recoupling: self.recoupling.clone(),
            duality: self.duality.clone(),
            tolerance: self.tolerance,
            unit_leg_residual: self.unit_leg_residual,
            cache: DiagramCache::default(),
        }
    }
}

fn structure<T>(msg: impl Into<String>) -> Result<T> {
    Err(CategoryError::Structure(msg.into()))
}

impl FusionData {
    pub fn new(input: FusionInput) -> Result<Self> {
        let r = input.names.len();
        if r == 0 {
            return structure("no simple objects");
        }
        let names_set: BTreeSet<&String> = input.names.iter().collect();
        if names_set.len() != r {
            return structure("duplicate simple names");
        }
        if input.unit >= r {
            return structure("unit label out of range");
        }
        if input.dual.len() != r || input.dims.len() != r || input.duality.len() != r {
            return structure("dual, dims and duality must list every simple");
        }
        for a in 0..r {
            let b = input.dual[a];
            if b >= r || input.dual[b] != a {
                return structure(format!("dual is not an involution at `{}`", input.names[a]));
            }
            if !(input.dims[a] > 0.0) || !input.dims[a].is_finite() {
                return structure(format!("dimension of `{}` must be positive", input.names[a]));
            }
        }
        if input.dual[input.unit] != input.unit {
            return structure("unit must be self-dual");
        }
        if !(input.tolerance > 0.0) {
            return structure("tolerance must be positive");
        }
        let mut n = vec![0usize; r * r * r];
        for &(a, b, cc, m) in &input.fusion {
            if a >= r || b >= r || cc >= r {
                return structure("fusion entry label out of range");
            }
            let slot = &mut n[(a * r + b) * r + cc];
            if *slot != 0 && *slot != m {
                return structure("conflicting fusion multiplicities");
            }
            *slot = m;
        }
        let u = input.unit;
        for a in 0..r {
            for cc in 0..r {
                let want = usize::from(a == cc);
                if n[(u * r + a) * r + cc] != want || n[(a * r + u) * r + cc] != want {
                    return structure(format!("unit fusion rule fails for `{}`", input.names[a]));
                }
            }
        }
        let mut fd = FusionData {
            names: input.names,
            unit: input.unit,
            dual: input.dual,
            dims: input.dims,
            n,
            recoupling: BTreeMap::new(),
            duality: input.duality,
            tolerance: input.tolerance,
            unit_leg_residual: 0.0,
            cache: DiagramCache::default(),
        };
        let mut supplied: BTreeMap<[Label; 4], RecouplingInput> = BTreeMap::new();
        for blk in input.recoupling {
            if blk.key.iter().any(|&l| l >= r) {
                return structure("recoupling key label out of range");
            }
            if supplied.insert(blk.key, blk.clone()).is_some() {
                return structure(format!("duplicate recoupling block {:?}", blk.key));
            }
        }
        for a in 0..r {
            for d in 0..r {
                for e in 0..r {
                    for cc in 0..r {
                        let key = [a, d, e, cc];
                        let rows = fd.row_channels(key);
                        let cols = fd.col_channels(key);
                        if cols.is_empty() {
                            if supplied.contains_key(&key) {
                                return structure(format!("recoupling block for inadmissible key {:?}", key));
                            }
                            continue;
                        }
                        if rows.len() != cols.len() {
                            return structure(format!("channel count mismatch at {:?}", key));
                        }
                        let unit_leg = a == u || d == u || e == u;
                        let derived = if unit_leg { Some(fd.unit_leg_block(key, &rows, &cols)) } else { None };
                        let mat = match supplied.remove(&key) {
                            Some(blk) => {
                                let m = fd.canonical_block(&blk, &rows, &cols)?;
                                if let Some(dm) = &derived {
                                    let res = crate::linalg::max_abs(&(&m - dm));
                                    fd.unit_leg_residual = fd.unit_leg_residual.max(res);
                                }
                                m
                            }
                            None => match derived {
                                Some(m) => m,
                                None => {
                                    return structure(format!(
                                        "missing recoupling block ({}, {}, {}, {})",
                                        fd.names[a], fd.names[d], fd.names[e], fd.names[cc]
                                    ))
                                }
                            },
                        };
                        let uinv = fd.inverse_block(&rows, &cols, &mat);
                        fd.recoupling.insert(key, Recoupling { rows, cols, u: mat, uinv });
                    }
                }
            }
        }
        if let Some(key) = supplied.keys().next() {
            return structure(format!("recoupling block for inadmissible key {:?}", key));
        }
        Ok(fd)
    }

    fn canonical_block(&self, blk: &RecouplingInput, rows: &[Channel], cols: &[Channel]) -> Result<DMatrix<C64>> {
        let mut rs = blk.rows.clone();
        let mut cs = blk.cols.clone();
        rs.sort();
        cs.sort();
        if rs != rows || cs != cols {
            return structure(format!("recoupling block {:?} has the wrong channels", blk.key));
        }
        if blk.matrix.nrows() != rows.len() || blk.matrix.ncols() != cols.len() {
            return structure(format!("recoupling block {:?} has the wrong shape", blk.key));
        }
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for (i, rch) in blk.rows.iter().enumerate() {
            let ri = rows.binary_search(rch).unwrap();
            for (j, cch) in blk.cols.iter().enumerate() {
                let cj = cols.binary_search(cch).unwrap();
                let mut v = blk.matrix[(i, j)];
                if blk.form == RecouplingForm::F {
                    v *= (self.dims[rch.mid] / self.dims[cch.mid]).sqrt();
                }
                m[(ri, cj)] = v;
            }
        }
        Ok(m)
    }

    /// Blocks with a unit leg are fixed by the convention `u_c = d_c^{-1/2} id_c`.
    fn unit_leg_block(&self, key: [Label; 4], rows: &[Channel], cols: &[Channel]) -> DMatrix<C64> {
        let [a, d, e, _] = key;
        let u = self.unit;
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for (j, src) in cols.iter().enumerate() {
            // the surviving non-unit vertex of the source tree
            let (f, gamma, delta) = if a == u {
                (d, 0, src.m2)
            } else if e == u {
                (key[3], src.m1, 0)
            } else {
                (a, 0, src.m1)
            };
            let tgt = Channel::new(f, gamma, delta);
            if let Ok(i) = rows.binary_search(&tgt) {
                m[(i, j)] = c((self.dims[f] / self.dims[src.mid]).sqrt());
            }
        }
        m
    }

    fn inverse_block(&self, rows: &[Channel], cols: &[Channel], u: &DMatrix<C64>) -> DMatrix<C64> {
        DMatrix::from_fn(cols.len(), rows.len(), |i, j| {
            u[(j, i)].conj() * self.dims[cols[i].mid] / self.dims[rows[j].mid]
        })
    }

    pub fn row_channels(&self, key: [Label; 4]) -> Vec<Channel> {
        let [a, d, e, cc] = key;
        let mut out = Vec::new();
        for f in 0..self.rank() {
            for g in 0..self.n(a, d, f) {
                for h in 0..self.n(f, e, cc) {
                    out.push(Channel::new(f, g, h));
                }
            }
        }
        out
    }

    pub fn col_channels(&self, key: [Label; 4]) -> Vec<Channel> {
        let [a, d, e, cc] = key;
        let mut out = Vec::new();
        for b in 0..self.rank() {
            for x in 0..self.n(a, b, cc) {
                for y in 0..self.n(d, e, b) {
                    out.push(Channel::new(b, x, y));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> std::ops::Range<Label> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Label) -> &str {
        &self.names[a]
    }

    pub fn label(&self, name: &str) -> Result<Label> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| CategoryError::UnknownLabel(name.to_string()))
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    pub fn dual(&self, a: Label) -> Label {
        self.dual[a]
    }

    pub fn dim(&self, a: Label) -> f64 {
        self.dims[a]
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn global_dim(&self) -> f64 {
        self.dims.iter().map(|d| d * d).sum()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn set_tolerance(&mut self, tol: f64) {
        self.tolerance = tol;
    }

    pub fn n(&self, a: Label, b: Label, cc: Label) -> usize {
        let r = self.rank();
        self.n[(a * r + b) * r + cc]
    }

    /// Labels `c` with `N_{ab}^c > 0`.
    pub fn fuse(&self, a: Label, b: Label) -> Vec<Label> {
        self.labels().filter(|&cc| self.n(a, b, cc) > 0).collect()
    }

    pub fn duality(&self, a: Label) -> DualityData {
        self.duality[a]
    }

    pub fn recoupling(&self, key: [Label; 4]) -> Option<&Recoupling> {
        self.recoupling.get(&key)
    }

    pub fn recoupling_blocks(&self) -> impl Iterator<Item = (&[Label; 4], &Recoupling)> {
        self.recoupling.iter()
    }

    /// Entry `U[(a,d,e,c)]^{tgt}_{src}`, zero when the channels are not present.
    pub fn u(&self, key: [Label; 4], tgt: Channel, src: Channel) -> C64 {
        match self.recoupling.get(&key) {
            Some(rc) => match (rc.row(tgt), rc.col(src)) {
                (Some(i), Some(j)) => rc.u[(i, j)],
                _ => C64::new(0.0, 0.0),
            },
            None => C64::new(0.0, 0.0),
        }
    }

    /// Entry of the inverse: coefficient of the right-nested tree `src` in the left-nested tree `tgt`.
    pub fn uinv(&self, key: [Label; 4], src: Channel, tgt: Channel) -> C64 {
        match self.recoupling.get(&key) {
            Some(rc) => match (rc.col(src), rc.row(tgt)) {
                (Some(i), Some(j)) => rc.uinv[(i, j)],
                _ => C64::new(0.0, 0.0),
            },
            None => C64::new(0.0, 0.0),
        }
    }

    pub fn unit_leg_residual(&self) -> f64 {
        self.unit_leg_residual
    }

    /// Fusion data as plain input, the inverse of [`FusionData::new`] (U-form, all blocks).
    pub fn to_input(&self) -> FusionInput {
        let r = self.rank();
        let mut fusion = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    let m = self.n(a, b, cc);
                    if m > 0 {
                        fusion.push((a, b, cc, m));
                    }
                }
            }
        }
        let recoupling = self
            .recoupling
            .iter()
            .filter(|(k, _)| !(k[0] == self.unit || k[1] == self.unit || k[2] == self.unit))
            .map(|(k, rc)| RecouplingInput {
                key: *k,
                form: RecouplingForm::U,
                rows: rc.rows.clone(),
                cols: rc.cols.clone(),
                matrix: rc.u.clone(),
            })
            .collect();
        FusionInput {
            names: self.names.clone(),
            unit: self.unit,
            dual: self.dual.clone(),
            dims: self.dims.clone(),
            fusion,
            recoupling,
            duality: self.duality.clone(),
            tolerance: self.tolerance,
        }
    }

    /// `Vec` with the single simple object `1`.
    pub fn trivial() -> Self {
        Self::group(&["1".to_string()], &[vec![0]]).expect("trivial category")
    }

    /// Pointed category of a finite group with trivial associator; `table[g][h] = gh`, label 0 is the identity.
    pub fn group(names: &[String], table: &[Vec<usize>]) -> Result<Self> {
        let r = names.len();
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return structure("group table must be square");
        }
        if (0..r).any(|g| table[0][g] != g || table[g][0] != g) {
            return structure("label 0 must be the group identity");
        }
        let mut dual = vec![usize::MAX; r];
        for g in 0..r {
            for h in 0..r {
                if table[g][h] == 0 {
                    dual[g] = h;
                }
            }
        }
        if dual.contains(&usize::MAX) {
            return structure("group table has an element without inverse");
        }
        let mut fusion = Vec::new();
        for g in 0..r {
            for h in 0..r {
                fusion.push((g, h, table[g][h], 1));
            }
        }
        let mut recoupling = Vec::new();
        for a in 1..r {
            for d in 1..r {
                for e in 1..r {
                    let b = table[d][e];
                    let f = table[a][d];
                    let cc = table[a][b];
                    recoupling.push(RecouplingInput {
                        key: [a, d, e, cc],
                        form: RecouplingForm::U,
                        rows: vec![Channel::new(f, 0, 0)],
                        cols: vec![Channel::new(b, 0, 0)],
                        matrix: DMatrix::from_element(1, 1, c(1.0)),
                    });
                }
            }
        }
        Self::new(FusionInput {
            names: names.to_vec(),
            unit: 0,
            dual,
            dims: vec![1.0; r],
            fusion,
            recoupling,
            duality: vec![DualityData::standard(1.0); r],
            tolerance: crate::DEFAULT_TOLERANCE,
        })
    }

    /// `Vec_{Z/n}` with labels named by their residues.
    pub fn cyclic(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        Self::group(&names, &table).expect("cyclic group")
    }

    /// Fibonacci category: `τ⊗τ = 1⊕τ`, `d_τ = (1+√5)/2`.
    pub fn fibonacci() -> Self {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let (one, tau) = (0, 1);
        let fusion = vec![
            (one, one, one, 1),
            (one, tau, tau, 1),
            (tau, one, tau, 1),
            (tau, tau, one, 1),
            (tau, tau, tau, 1),
        ];
        let f = DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0 / phi), c(phi.powf(-0.5)), c(phi.powf(-0.5)), c(-1.0 / phi)],
        );
        let recoupling = vec![
            RecouplingInput {
                key: [tau, tau, tau, one],
                form: RecouplingForm::F,
                rows: vec![Channel::new(tau, 0, 0)],
                cols: vec![Channel::new(tau, 0, 0)],
                matrix: DMatrix::from_element(1, 1, c(1.0)),
            },
            RecouplingInput {
                key: [tau, tau, tau, tau],
                form: RecouplingForm::F,
                rows: vec![Channel::new(one, 0, 0), Channel::new(tau, 0, 0)],
                cols: vec![Channel::new(one, 0, 0), Channel::new(tau, 0, 0)],
                matrix: f,
            },
        ];
        Self::new(FusionInput {
            names: vec!["1".into(), "tau".into()],
            unit: one,
            dual: vec![one, tau],
            dims: vec![1.0, phi],
            fusion,
            recoupling,
            duality: vec![DualityData::standard(1.0), DualityData::standard(phi)],
            tolerance: crate::DEFAULT_TOLERANCE,
        })
        .expect("fibonacci data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_u_entries() {
        let fd = FusionData::fibonacci();
        let phi = fd.dim(1);
        let rc = fd.recoupling([1, 1, 1, 1]).unwrap();
        assert!((rc.u[(0, 0)].re - 1.0 / phi).abs() < 1e-14);
        assert!((rc.u[(0, 1)].re - 1.0 / phi).abs() < 1e-14);
        assert!((rc.u[(1, 0)].re - 1.0).abs() < 1e-14);
        let prod = &rc.u * &rc.uinv;
        assert!(crate::linalg::max_abs(&(prod - DMatrix::identity(2, 2))) < 1e-13);
    }

    #[test]
    fn rejects_missing_block() {
        let mut inp = FusionData::fibonacci().to_input();
        inp.recoupling.retain(|b| b.key != [1, 1, 1, 1]);
        assert!(FusionData::new(inp).is_err());
    }

    #[test]
    fn unit_leg_blocks_match_convention() {
        let fd = FusionData::fibonacci();
        let phi = fd.dim(1);
        // (1_τ⊗u_τ)∘α with b = τ against (γ⊗1_1)∘u with f = c
        let rc = fd.recoupling([1, 1, 0, 0]).unwrap();
        assert_eq!(rc.u.nrows(), 1);
        assert!((rc.u[(0, 0)].re - (1.0 / phi).sqrt()).abs() < 1e-14);
        assert_eq!(fd.unit_leg_residual(), 0.0);
    }
}
