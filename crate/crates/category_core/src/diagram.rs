//! Morphisms between tensor words of simples, in the basis of left-nested fusion trees.
//!
//! A morphism `f: w → v` is stored as one matrix per top label `c`,
//! `f = Σ_c Σ_{T,S} M_c[T,S] T∘S*`, with `T` ranging over trees `c → v` and `S` over trees
//! `c → w`. Trees satisfy `T*T' = δ_{TT'} w(T) id_c`, so composition is `M·diag(w)·N`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::fusion::{Channel, FusionData, Label};
use crate::linalg::c;

/// A tensor word of non-unit simples; the empty word is the unit object.
pub type Word = Vec<Label>;

/// Left-nested tree: vertex `k` fuses the running label with letter `k+1` into `inter[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub inter: Vec<Label>,
    pub mult: Vec<usize>,
}

#[derive(Debug)]
pub struct TreeSpace {
    pub word: Word,
    pub top: Label,
    pub trees: Vec<Tree>,
    pub weights: Vec<f64>,
    index: HashMap<Tree, usize>,
}

impl TreeSpace {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.index.get(t).copied()
    }
}

type PairKey = (Word, Word, Label, Label, Label, usize);

#[derive(Default, Debug)]
pub(crate) struct DiagramCache {
    trees: Mutex<HashMap<(Word, Label), Arc<TreeSpace>>>,
    pairs: Mutex<HashMap<PairKey, Arc<DMatrix<C64>>>>,
    /// Conjugation (`false`) and bending (`true`) matrices keyed by their three labels.
    pub(crate) vertex_maps: Mutex<HashMap<(bool, Label, Label, Label), Arc<DMatrix<C64>>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordMorphism {
    pub source: Word,
    pub target: Word,
    pub blocks: BTreeMap<Label, DMatrix<C64>>,
}

impl WordMorphism {
    pub fn scale(mut self, z: C64) -> Self {
        for b in self.blocks.values_mut() {
            *b *= z;
        }
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().map(crate::linalg::max_abs).fold(0.0, f64::max)
    }
}

impl FusionData {
    /// Word of a single label, empty for the unit.
    pub fn word1(&self, a: Label) -> Word {
        if a == self.unit() {
            vec![]
        } else {
            vec![a]
        }
    }

    /// Concatenation with unit letters removed.
    pub fn word(&self, letters: &[Label]) -> Word {
        letters.iter().copied().filter(|&a| a != self.unit()).collect()
    }

    pub fn trees(&self, word: &[Label], top: Label) -> Arc<TreeSpace> {
        let key = (word.to_vec(), top);
        if let Some(ts) = self.cache.trees.lock().unwrap().get(&key) {
            return ts.clone();
        }
        debug_assert!(word.iter().all(|&a| a != self.unit()), "words carry no unit letters");
        let mut trees = Vec::new();
        match word.len() {
            0 => {
                if top == self.unit() {
                    trees.push(Tree { inter: vec![], mult: vec![] });
                }
            }
            1 => {
                if top == word[0] {
                    trees.push(Tree { inter: vec![], mult: vec![] });
                }
            }
            _ => {
                let mut stack = vec![(word[0], Tree { inter: vec![], mult: vec![] })];
                while let Some((run, t)) = stack.pop() {
                    let k = t.inter.len();
                    if k + 1 == word.len() {
                        if run == top {
                            trees.push(t);
                        }
                        continue;
                    }
                    for h in self.labels().rev() {
                        for m in (0..self.n(run, word[k + 1], h)).rev() {
                            let mut nt = t.clone();
                            nt.inter.push(h);
                            nt.mult.push(m);
                            stack.push((h, nt));
                        }
                    }
                }
            }
        }
        let weights = trees
            .iter()
            .map(|t| t.inter.iter().map(|&h| 1.0 / self.dim(h)).product())
            .collect();
        let index = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let ts = Arc::new(TreeSpace { word: word.to_vec(), top, trees, weights, index });
        self.cache.trees.lock().unwrap().insert(key, ts.clone());
        ts
    }

    /// Labels carrying at least one tree into `word`.
    pub fn tops(&self, word: &[Label]) -> Vec<Label> {
        self.labels().filter(|&c| !self.trees(word, c).is_empty()).collect()
    }

    pub fn wm_zero(&self, source: &[Label], target: &[Label]) -> WordMorphism {
        WordMorphism { source: source.to_vec(), target: target.to_vec(), blocks: BTreeMap::new() }
    }

    pub fn wm_identity(&self, word: &[Label]) -> WordMorphism {
        let mut blocks = BTreeMap::new();
        for c in self.tops(word) {
            let ts = self.trees(word, c);
            let d = nalgebra::DVector::from_iterator(ts.len(), ts.weights.iter().map(|w| c64(1.0 / w)));
            blocks.insert(c, DMatrix::from_diagonal(&d));
        }
        WordMorphism { source: word.to_vec(), target: word.to_vec(), blocks }
    }

    /// The tree `idx` of `trees(word, top)` as a morphism `top → word`.
    pub fn wm_tree(&self, word: &[Label], top: Label, idx: usize) -> WordMorphism {
        let ts = self.trees(word, top);
        let mut m = DMatrix::zeros(ts.len(), 1);
        m[(idx, 0)] = c(1.0);
        let mut blocks = BTreeMap::new();
        blocks.insert(top, m);
        WordMorphism { source: self.word1(top), target: word.to_vec(), blocks }
    }

    /// Basis vertex `μ ∈ C(c, a⊗b)` as a morphism `[c] → [a, b]`; unit legs give `d_c^{-1/2} id_c`.
    pub fn wm_vertex(&self, a: Label, b: Label, cc: Label, mu: usize) -> WordMorphism {
        assert!(mu < self.n(a, b, cc), "vertex index out of range");
        let u = self.unit();
        let target = self.word(&[a, b]);
        let mut blocks = BTreeMap::new();
        if a != u && b != u {
            let ts = self.trees(&target, cc);
            let idx = ts.index_of(&Tree { inter: vec![cc], mult: vec![mu] }).unwrap();
            let mut m = DMatrix::zeros(ts.len(), 1);
            m[(idx, 0)] = c(1.0);
            blocks.insert(cc, m);
        } else {
            blocks.insert(cc, DMatrix::from_element(1, 1, c(self.dim(cc).powf(-0.5))));
        }
        WordMorphism { source: self.word1(cc), target, blocks }
    }

    /// `ev_a : ā⊗a → 1`.
    pub fn wm_ev(&self, a: Label) -> WordMorphism {
        let eps = self.wm_vertex(self.dual(a), a, self.unit(), 0);
        self.wm_adjoint(&eps).scale(self.duality(a).ev)
    }

    /// `coev_a : 1 → a⊗ā`.
    pub fn wm_coev(&self, a: Label) -> WordMorphism {
        self.wm_vertex(a, self.dual(a), self.unit(), 0).scale(self.duality(a).coev)
    }

    pub fn wm_adjoint(&self, f: &WordMorphism) -> WordMorphism {
        WordMorphism {
            source: f.target.clone(),
            target: f.source.clone(),
            blocks: f.blocks.iter().map(|(&k, m)| (k, m.adjoint())).collect(),
        }
    }

    pub fn wm_add(&self, f: &WordMorphism, g: &WordMorphism) -> WordMorphism {
        assert!(f.source == g.source && f.target == g.target, "adding morphisms between different words");
        let mut out = f.clone();
        for (k, m) in &g.blocks {
            match out.blocks.get_mut(k) {
                Some(b) => *b += m,
                None => {
                    out.blocks.insert(*k, m.clone());
                }
            }
        }
        out
    }

    /// `f ∘ g`.
    pub fn wm_compose(&self, f: &WordMorphism, g: &WordMorphism) -> WordMorphism {
        assert!(f.source == g.target, "composing morphisms through different words: {:?} vs {:?}", f.source, g.target);
        let mut blocks = BTreeMap::new();
        for (k, mf) in &f.blocks {
            if let Some(mg) = g.blocks.get(k) {
                let ts = self.trees(&f.source, *k);
                let mut scaled = mg.clone();
                for (i, w) in ts.weights.iter().enumerate() {
                    scaled.row_mut(i).scale_mut(*w);
                }
                blocks.insert(*k, mf * scaled);
            }
        }
        WordMorphism { source: g.source.clone(), target: f.target.clone(), blocks }
    }

    pub fn wm_tensor(&self, f: &WordMorphism, g: &WordMorphism) -> WordMorphism {
        let mut source = f.source.clone();
        source.extend(&g.source);
        let mut target = f.target.clone();
        target.extend(&g.target);
        let mut blocks: BTreeMap<Label, DMatrix<C64>> = BTreeMap::new();
        for (&c1, mf) in &f.blocks {
            for (&c2, mg) in &g.blocks {
                let k = mf.kronecker(mg);
                for e in self.fuse(c1, c2) {
                    for lam in 0..self.n(c1, c2, e) {
                        let xv = self.expand_pair(&f.target, &g.target, c1, c2, e, lam);
                        let xw = self.expand_pair(&f.source, &g.source, c1, c2, e, lam);
                        let term = (&*xv * &k * xw.adjoint()) * c(self.dim(e));
                        match blocks.get_mut(&e) {
                            Some(b) => *b += term,
                            None => {
                                blocks.insert(e, term);
                            }
                        }
                    }
                }
            }
        }
        WordMorphism { source, target, blocks }
    }

    /// Scalar of an endomorphism of a simple word `[c]` (or of the empty word).
    pub fn wm_scalar(&self, f: &WordMorphism) -> C64 {
        assert!(f.source.len() <= 1 && f.source == f.target, "scalar of a non-simple endomorphism");
        let top = f.source.first().copied().unwrap_or(self.unit());
        f.blocks.get(&top).map(|m| m[(0, 0)]).unwrap_or(C64::new(0.0, 0.0))
    }

    /// Coefficients of `(T ⊗ T')∘λ` in trees of `v·v'` with top `e`; columns indexed by `T·|T'| + T'`.
    fn expand_pair(&self, v: &[Label], v2: &[Label], c1: Label, c2: Label, e: Label, lam: usize) -> Arc<DMatrix<C64>> {
        let key: PairKey = (v.to_vec(), v2.to_vec(), c1, c2, e, lam);
        if let Some(m) = self.cache.pairs.lock().unwrap().get(&key) {
            return m.clone();
        }
        let tv = self.trees(v, c1);
        let tv2 = self.trees(v2, c2);
        let mut vv = v.to_vec();
        vv.extend(v2);
        let tw = self.trees(&vv, e);
        let n2 = tv2.len();
        let mut m = DMatrix::zeros(tw.len(), tv.len() * n2);
        if v.is_empty() {
            for (j, t2) in tv2.trees.iter().enumerate() {
                m[(tw.index_of(t2).unwrap(), j)] += c(self.dim(c2).powf(-0.5));
            }
        } else if v2.is_empty() {
            for (i, t) in tv.trees.iter().enumerate() {
                m[(tw.index_of(t).unwrap(), i)] += c(self.dim(c1).powf(-0.5));
            }
        } else {
            for (j, t2) in tv2.trees.iter().enumerate() {
                for (inter, mult, coef) in self.chain_expand(c1, v2, t2, e, lam) {
                    for (i, t) in tv.trees.iter().enumerate() {
                        let full = if v.len() == 1 {
                            Tree { inter: inter.clone(), mult: mult.clone() }
                        } else {
                            let mut ti = t.inter.clone();
                            ti.extend(&inter);
                            let mut tm = t.mult.clone();
                            tm.extend(&mult);
                            Tree { inter: ti, mult: tm }
                        };
                        m[(tw.index_of(&full).unwrap(), i * n2 + j)] += coef;
                    }
                }
            }
        }
        let m = Arc::new(m);
        self.cache.pairs.lock().unwrap().insert(key, m.clone());
        m
    }

    /// Expansion of `(1_c ⊗ T')∘λ`, `λ ∈ C(e, c⊗top(T'))`, into chains of vertices
    /// `c⊗y₁→h₁, h₁⊗y₂→h₂, …` ending at `e`.
    fn chain_expand(&self, c1: Label, v2: &[Label], t2: &Tree, e: Label, lam: usize) -> Vec<(Vec<Label>, Vec<usize>, C64)> {
        let m = v2.len();
        if m == 1 {
            return vec![(vec![e], vec![lam], c(1.0))];
        }
        let g = t2.inter[m - 2];
        let gp = if m == 2 { v2[0] } else { t2.inter[m - 3] };
        let beta = t2.mult[m - 2];
        let ym = v2[m - 1];
        let sub_tree = Tree { inter: t2.inter[..m - 2].to_vec(), mult: t2.mult[..m - 2].to_vec() };
        let rc = self.recoupling([c1, gp, ym, e]).expect("admissible recoupling key");
        let col = rc.col(Channel::new(g, lam, beta)).expect("source channel");
        let mut acc: HashMap<(Vec<Label>, Vec<usize>), C64> = HashMap::new();
        for (i, row) in rc.rows.iter().enumerate() {
            let uv = rc.u[(i, col)];
            if uv.norm() == 0.0 {
                continue;
            }
            for (mut inter, mut mult, coef) in self.chain_expand(c1, &v2[..m - 1], &sub_tree, row.mid, row.m1) {
                inter.push(e);
                mult.push(row.m2);
                *acc.entry((inter, mult)).or_insert(C64::new(0.0, 0.0)) += coef * uv;
            }
        }
        acc.into_iter().map(|((i, m), z)| (i, m, z)).collect()
    }
}

fn c64(x: f64) -> C64 {
    C64::new(x, 0.0)
}
