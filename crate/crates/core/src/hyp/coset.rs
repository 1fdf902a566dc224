use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{FuchsianPresentation, Letter, Word};
use crate::error::{Error, Result};

/// Right action of the generators on the cosets `{0, …, N−1}` of a
/// finite-index subgroup; coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    /// `perms[g][c]` is the coset `c·g`.
    perms: Vec<Vec<u32>>,
    #[serde(skip)]
    inverses: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Build from generator permutations; checks bijectivity and
    /// transitivity.
    pub fn from_permutations(perms: Vec<Vec<u32>>) -> Result<Self> {
        let n = perms.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::argument("coset table needs at least one coset"));
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (g, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::argument(format!("generator {g} permutation has wrong length")));
            }
            let mut inv = vec![u32::MAX; n];
            for (c, &d) in p.iter().enumerate() {
                if d as usize >= n || inv[d as usize] != u32::MAX {
                    return Err(Error::argument(format!("generator {g} image is not a bijection")));
                }
                inv[d as usize] = c as u32;
            }
            inverses.push(inv);
        }
        let table = Self { perms, inverses };
        if table.orbit_of_zero().len() != n {
            return Err(Error::argument("coset action is not transitive"));
        }
        Ok(table)
    }

    /// Rebuild derived state after deserialisation.
    pub fn revalidate(self) -> Result<Self> {
        Self::from_permutations(self.perms)
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.perms.len()
    }

    pub fn permutation(&self, gen: usize) -> &[u32] {
        &self.perms[gen]
    }

    pub fn permutations(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn act_letter(&self, coset: usize, l: Letter) -> usize {
        if l.inverse {
            self.inverses[l.gen][coset] as usize
        } else {
            self.perms[l.gen][coset] as usize
        }
    }

    pub fn act(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act_letter(c, l))
    }

    /// Permutation induced by a word.
    pub fn word_permutation(&self, w: &Word) -> Vec<u32> {
        (0..self.degree()).map(|c| self.act(c, w) as u32).collect()
    }

    /// True when the word's element lies in the subgroup.
    pub fn contains(&self, w: &Word) -> bool {
        self.act(0, w) == 0
    }

    fn orbit_of_zero(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for g in 0..self.perms.len() {
                for d in [self.perms[g][c] as usize, self.inverses[g][c] as usize] {
                    if !seen[d] {
                        seen[d] = true;
                        order.push(d);
                    }
                }
            }
        }
        order
    }

    /// Renumber cosets in breadth-first order over columns
    /// `g₀, g₀⁻¹, g₁, …`; two tables for the same subgroup become equal.
    pub fn standardise(&self) -> Self {
        let n = self.degree();
        let mut new_of = vec![u32::MAX; n];
        let mut order = vec![0usize];
        new_of[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for col in 0..2 * self.perms.len() {
                let d = self.act_letter(c, Letter::from_column(col));
                if new_of[d] == u32::MAX {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let perms = self
            .perms
            .iter()
            .map(|p| order.iter().map(|&c| new_of[p[c] as usize]).collect())
            .collect();
        Self::from_permutations(perms).expect("renumbering preserves validity")
    }

    /// Every relator fixes every coset.
    pub fn satisfies(&self, relators: &[Word]) -> bool {
        relators
            .iter()
            .all(|r| (0..self.degree()).all(|c| self.act(c, r) == c))
    }

    /// Cycle lengths of a generator's permutation.
    pub fn cycle_lengths(&self, gen: usize) -> Vec<usize> {
        cycle_lengths(&self.perms[gen])
    }

    /// Orbits of the cyclic group generated by `w` on cosets, as a map from
    /// coset to orbit id (ids in order of smallest member).
    pub fn orbits_of_word(&self, w: &Word) -> Vec<usize> {
        let perm = self.word_permutation(w);
        let n = perm.len();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut c = start;
            while id[c] == usize::MAX {
                id[c] = next;
                c = perm[c] as usize;
            }
            next += 1;
        }
        id
    }

    /// Schreier generators of the subgroup, one per non-tree edge of a
    /// breadth-first spanning tree of the coset graph.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let n = self.degree();
        let mut rep: Vec<Option<Word>> = vec![None; n];
        rep[0] = Some(Word::empty());
        let mut tree = std::collections::BTreeSet::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..2 * self.perms.len() {
                let l = Letter::from_column(col);
                let d = self.act_letter(c, l);
                if rep[d].is_none() {
                    rep[d] = Some(rep[c].as_ref().unwrap().concat(&Word::from_letters([l])));
                    tree.insert((c, col));
                    tree.insert((d, Letter::from_column(col).inv().column()));
                    queue.push_back(d);
                }
            }
        }
        let mut out = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for c in 0..n {
            for g in 0..self.perms.len() {
                if tree.contains(&(c, 2 * g)) {
                    continue;
                }
                let d = self.perms[g][c] as usize;
                let w = rep[c]
                    .as_ref()
                    .unwrap()
                    .concat(&Word::generator(g))
                    .concat(&rep[d].as_ref().unwrap().inverse());
                if !w.is_empty() && seen.insert(w.clone()) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Action on pairs `(a, b)` reachable from `(0, 0)`: the coset table of
    /// the intersection of the two subgroups.
    pub fn intersect(&self, other: &Self, max_degree: usize) -> Result<Self> {
        let k = self.perms.len();
        let mut index: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        index.insert((0, 0), 0);
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            i += 1;
            for g in 0..k {
                for (pa, pb) in [
                    (self.perms[g][a as usize], other.perms[g][b as usize]),
                    (self.inverses[g][a as usize], other.inverses[g][b as usize]),
                ] {
                    if !index.contains_key(&(pa, pb)) {
                        if pairs.len() >= max_degree {
                            return Err(Error::resource(format!(
                                "intersection exceeds {max_degree} cosets"
                            )));
                        }
                        index.insert((pa, pb), pairs.len() as u32);
                        pairs.push((pa, pb));
                    }
                }
            }
        }
        let perms = (0..k)
            .map(|g| {
                pairs
                    .iter()
                    .map(|&(a, b)| index[&(self.perms[g][a as usize], other.perms[g][b as usize])])
                    .collect()
            })
            .collect();
        Self::from_permutations(perms)
    }

    /// Table of the kernel of the permutation action: the regular action of
    /// the image group on itself, if that group has at most `max_order`
    /// elements.
    pub fn regular_representation(&self, max_order: usize) -> Result<Self> {
        let k = self.perms.len();
        let n = self.degree();
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut index: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut i = 0;
        while i < elements.len() {
            let g = elements[i].clone();
            i += 1;
            for x in &self.perms {
                let gx: Vec<u32> = g.iter().map(|&p| x[p as usize]).collect();
                if !index.contains_key(&gx) {
                    if elements.len() >= max_order {
                        return Err(Error::resource(format!(
                            "permutation group image exceeds {max_order} elements"
                        )));
                    }
                    index.insert(gx.clone(), elements.len() as u32);
                    elements.push(gx);
                }
            }
        }
        let perms = (0..k)
            .map(|gi| {
                let x = &self.perms[gi];
                elements
                    .iter()
                    .map(|g| {
                        let gx: Vec<u32> = g.iter().map(|&p| x[p as usize]).collect();
                        index[&gx]
                    })
                    .collect()
            })
            .collect();
        Self::from_permutations(perms)
    }
}

pub fn cycle_lengths(perm: &[u32]) -> Vec<usize> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            c = perm[c] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

/// The subgroup meets no conjugate of a nontrivial power of an elliptic
/// generator: each period generator acts with all cycles of exactly its
/// period.
pub fn is_torsion_free(pres: &FuchsianPresentation, table: &CosetTable) -> bool {
    pres.period_generators()
        .all(|(g, m)| table.cycle_lengths(g).iter().all(|&l| l == m as usize))
}

const NONE: u32 = u32::MAX;

/// Hazelgrove–Leech–Trotter coset enumeration.
struct Enumerator<'a> {
    relators: Vec<Vec<usize>>,
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max: usize,
    _pres: &'a FuchsianPresentation,
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl<'a> Enumerator<'a> {
    fn new(pres: &'a FuchsianPresentation, max: usize) -> Self {
        let cols = 2 * pres.generator_count();
        let relators = pres
            .relators()
            .iter()
            .map(|r| r.letters().iter().map(|l| l.column()).collect())
            .collect();
        Self {
            relators,
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            queue: Vec::new(),
            max,
            _pres: pres,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = c;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    fn define(&mut self, c: usize, col: usize) -> Result<()> {
        if self.table.len() >= self.max {
            return Err(Error::resource(format!(
                "coset budget of {} exhausted (subgroup may have infinite index)",
                self.max
            )));
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d as u32);
        self.table[c][col] = d as u32;
        self.table[d][inv_col(col)] = c as u32;
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]] as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inv_col(w[j as usize])] != NONE {
                b = self.table[b][inv_col(w[j as usize])] as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = b as u32;
                self.table[b][inv_col(x)] = f as u32;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k1 = self.rep(k);
        let l1 = self.rep(l);
        if k1 == l1 {
            return;
        }
        let (lo, hi) = if k1 < l1 { (k1, l1) } else { (l1, k1) };
        self.parent[hi] = lo as u32;
        self.queue.push(hi as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                if self.table[f][inv_col(x)] as usize == e {
                    self.table[f][inv_col(x)] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x] as usize;
                    self.merge(f1, t);
                } else if self.table[f1][inv_col(x)] != NONE {
                    let t = self.table[f1][inv_col(x)] as usize;
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1 as u32;
                    self.table[f1][inv_col(x)] = e1 as u32;
                }
            }
        }
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable> {
        for w in subgroup {
            let cols: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
            let r = self.rep(0);
            self.scan_and_fill(r, &cols)?;
        }
        let mut c = 0;
        while c < self.table.len() {
            for ri in 0..self.relators.len() {
                if !self.live(c) {
                    break;
                }
                let rel = self.relators[ri].clone();
                self.scan_and_fill(c, &rel)?;
            }
            for x in 0..self.cols {
                if !self.live(c) {
                    break;
                }
                if self.table[c][x] == NONE {
                    self.define(c, x)?;
                }
            }
            c += 1;
        }
        self.compact()
    }

    fn compact(mut self) -> Result<CosetTable> {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.live(c)).collect();
        let mut new_of = vec![u32::MAX; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            new_of[c] = i as u32;
        }
        let gens = self.cols / 2;
        let mut perms = vec![vec![0u32; live.len()]; gens];
        for (i, &c) in live.iter().enumerate() {
            for g in 0..gens {
                let d = self.table[c][2 * g];
                if d == NONE {
                    return Err(Error::Internal("incomplete coset table".into()));
                }
                let d = self.rep(d as usize);
                perms[g][i] = new_of[d];
            }
        }
        Ok(CosetTable::from_permutations(perms)?.standardise())
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup`, defining
/// at most `max_cosets` cosets in total.
pub fn todd_coxeter(
    pres: &FuchsianPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::argument("max_cosets must be at least 1"));
    }
    let table = Enumerator::new(pres, max_cosets).run(subgroup)?;
    if !table.satisfies(pres.relators()) {
        return Err(Error::Internal("enumerated table fails a relator".into()));
    }
    for w in subgroup {
        if !table.contains(w) {
            return Err(Error::Internal("subgroup generator does not fix coset 0".into()));
        }
    }
    Ok(table)
}

/// All subgroups of index at most `max_degree`, as standard coset tables,
/// in the deterministic order of a backtracking search that fills the first
/// undefined entry with existing cosets in increasing order, then a new one.
/// Stops with a resource error after `max_nodes` search nodes.
pub fn low_index_subgroups(
    pres: &FuchsianPresentation,
    max_degree: usize,
    max_nodes: usize,
) -> Result<Vec<CosetTable>> {
    let cols = 2 * pres.generator_count();
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column()).collect())
        .collect();
    let mut search = LowIndex {
        relators,
        cols,
        max_degree,
        nodes: 0,
        max_nodes,
        found: Vec::new(),
    };
    let start = Partial {
        rows: vec![vec![NONE; cols]],
    };
    search.descend(start)?;
    Ok(search.found)
}

#[derive(Clone)]
struct Partial {
    rows: Vec<Vec<u32>>,
}

struct LowIndex {
    relators: Vec<Vec<usize>>,
    cols: usize,
    max_degree: usize,
    nodes: usize,
    max_nodes: usize,
    found: Vec<CosetTable>,
}

impl LowIndex {
    fn descend(&mut self, mut t: Partial) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::resource(format!(
                "low-index search exceeded {} nodes",
                self.max_nodes
            )));
        }
        if !self.deduce(&mut t) {
            return Ok(());
        }
        let next = (0..t.rows.len())
            .flat_map(|c| (0..self.cols).map(move |x| (c, x)))
            .find(|&(c, x)| t.rows[c][x] == NONE);
        let Some((c, x)) = next else {
            let gens = self.cols / 2;
            let perms = (0..gens)
                .map(|g| t.rows.iter().map(|r| r[2 * g]).collect())
                .collect();
            if let Ok(table) = CosetTable::from_permutations(perms) {
                self.found.push(table);
            }
            return Ok(());
        };
        let n = t.rows.len();
        for d in 0..n {
            if t.rows[d][inv_col(x)] != NONE {
                continue;
            }
            let mut u = t.clone();
            u.rows[c][x] = d as u32;
            u.rows[d][inv_col(x)] = c as u32;
            self.descend(u)?;
        }
        if n < self.max_degree {
            let mut u = t;
            u.rows.push(vec![NONE; self.cols]);
            u.rows[c][x] = n as u32;
            u.rows[n][inv_col(x)] = c as u32;
            self.descend(u)?;
        }
        Ok(())
    }

    /// Scan every relator from every coset, filling forced entries; false on
    /// a contradiction.
    fn deduce(&self, t: &mut Partial) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.rows.len() {
                for r in &self.relators {
                    match scan(t, c, r) {
                        Scan::Conflict => return false,
                        Scan::Deduce(f, x, b) => {
                            if t.rows[f][x] != NONE || t.rows[b][inv_col(x)] != NONE {
                                return false;
                            }
                            t.rows[f][x] = b as u32;
                            t.rows[b][inv_col(x)] = f as u32;
                            changed = true;
                        }
                        Scan::Open | Scan::Closed => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

enum Scan {
    Closed,
    Open,
    Conflict,
    Deduce(usize, usize, usize),
}

fn scan(t: &Partial, c: usize, w: &[usize]) -> Scan {
    let mut f = c;
    let mut i = 0;
    while i < w.len() && t.rows[f][w[i]] != NONE {
        f = t.rows[f][w[i]] as usize;
        i += 1;
    }
    if i == w.len() {
        return if f == c { Scan::Closed } else { Scan::Conflict };
    }
    let mut b = c;
    let mut j = w.len();
    while j > i && t.rows[b][inv_col(w[j - 1])] != NONE {
        b = t.rows[b][inv_col(w[j - 1])] as usize;
        j -= 1;
    }
    if j == i + 1 {
        Scan::Deduce(f, w[i], b)
    } else {
        Scan::Open
    }
}
