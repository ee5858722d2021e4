use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use super::matrix::{Matrix, MatrixContext};
use crate::abst::AbelianStructure;
use crate::arith;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 2_000_000;

/// Groups at most this large get a full multiplication table on request.
pub const TABLE_LIMIT: usize = 2048;

/// The enumeration cap: `ENDOTRIV_CAP` when set and valid, else [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var("ENDOTRIV_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CAP)
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A fully enumerated subgroup of `GL(n,q)/Z`. Element 0 is the identity.
pub struct EnumeratedGroup {
    id: u64,
    ctx: Arc<MatrixContext>,
    generators: Vec<Matrix>,
    gen_idx: Vec<u32>,
    elements: Vec<Matrix>,
    index: FxHashMap<Matrix, u32>,
    inverses: OnceLock<Vec<u32>>,
    table: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EnumeratedGroup(order {} in {:?})", self.order(), self.ctx)
    }
}

/// Breadth-first closure of `gens`, deterministic in the generator order.
pub fn closure(ctx: &Arc<MatrixContext>, gens: &[Matrix], cap: usize) -> Result<EnumeratedGroup> {
    let mut generators = Vec::with_capacity(gens.len());
    for g in gens {
        if g.dim() != ctx.n() {
            return Err(Error::domain("generator dimension does not match the context"));
        }
        if ctx.det(g) == 0 {
            return Err(Error::domain("singular generator"));
        }
        generators.push(ctx.canonical(g));
    }
    let id = ctx.identity();
    let mut elements = vec![id];
    let mut index = FxHashMap::default();
    index.insert(id, 0u32);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        for g in &generators {
            let y = ctx.mul(&x, g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { what: "group closure".into(), cap });
                }
                index.insert(y, elements.len() as u32);
                elements.push(y);
            }
        }
        head += 1;
    }
    let gen_idx = generators.iter().map(|g| index[g]).collect();
    Ok(EnumeratedGroup {
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        ctx: Arc::clone(ctx),
        generators,
        gen_idx,
        elements,
        index,
        inverses: OnceLock::new(),
        table: OnceLock::new(),
    })
}

#[derive(Clone, Debug)]
enum Membership {
    Sorted,
    Bits(Vec<u64>),
}

/// A subgroup of an [`EnumeratedGroup`], held as sorted element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    elements: Vec<u32>,
    gens: Vec<u32>,
    membership: Membership,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    fn build(parent: &EnumeratedGroup, mut elements: Vec<u32>, gens: Vec<u32>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        assert_eq!(parent.order() % elements.len(), 0, "Lagrange violated: subgroup order does not divide group order");
        let membership = if elements.len() > 32 {
            let mut bits = vec![0u64; parent.order().div_ceil(64)];
            for &e in &elements {
                bits[e as usize / 64] |= 1 << (e % 64);
            }
            Membership::Bits(bits)
        } else {
            Membership::Sorted
        };
        Subgroup { parent: parent.id, elements, gens, membership }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Sorted indices into the parent's element list.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        match &self.membership {
            Membership::Bits(b) => b[x as usize / 64] >> (x % 64) & 1 == 1,
            Membership::Sorted => self.elements.binary_search(&x).is_ok(),
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.len() <= other.elements.len() && self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// An elementary abelian p-subgroup with its rank and maximality flag.
#[derive(Clone, Debug)]
pub struct ElementaryAbelian {
    pub subgroup: Subgroup,
    pub rank: u32,
    pub maximal: bool,
}

struct Closer<'a> {
    g: &'a EnumeratedGroup,
    elems: Vec<u32>,
    bits: Vec<u64>,
    gens: Vec<u32>,
}

impl<'a> Closer<'a> {
    fn new(g: &'a EnumeratedGroup) -> Self {
        let mut bits = vec![0u64; g.order().div_ceil(64)];
        bits[0] |= 1;
        Closer { g, elems: vec![0], bits, gens: Vec::new() }
    }

    #[inline]
    fn contains(&self, x: u32) -> bool {
        self.bits[x as usize / 64] >> (x % 64) & 1 == 1
    }

    fn insert(&mut self, x: u32) {
        self.bits[x as usize / 64] |= 1 << (x % 64);
        self.elems.push(x);
    }

    /// Extends the current subgroup K to <K, x> (Dimino's coset method).
    fn add(&mut self, x: u32) -> bool {
        if self.contains(x) {
            return false;
        }
        self.gens.push(x);
        let k: Vec<u32> = self.elems.clone();
        let mut reps = vec![0u32];
        let mut pos = 0;
        while pos < reps.len() {
            let r = reps[pos];
            pos += 1;
            for gi in 0..self.gens.len() {
                let y = self.g.mul(r, self.gens[gi]);
                if !self.contains(y) {
                    reps.push(y);
                    for &kk in &k {
                        let z = self.g.mul(kk, y);
                        self.insert(z);
                    }
                }
            }
        }
        true
    }

    fn finish(self) -> Subgroup {
        Subgroup::build(self.g, self.elems, self.gens)
    }
}

impl EnumeratedGroup {
    pub fn ctx(&self) -> &Arc<MatrixContext> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_idx
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Matrix {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<u32> {
        self.index.get(&self.ctx.canonical(m)).copied()
    }

    /// Builds the full multiplication table when the group is small enough.
    pub fn build_table(&self) {
        if self.order() <= TABLE_LIMIT {
            self.table.get_or_init(|| {
                let n = self.order();
                let mut t = Vec::with_capacity(n * n);
                for a in &self.elements {
                    for b in &self.elements {
                        t.push(self.index[&self.ctx.mul(a, b)]);
                    }
                }
                t
            });
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = self.table.get() {
            return t[a as usize * self.order() + b as usize];
        }
        let m = self.ctx.mul(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&m]
    }

    fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| self.elements.iter().map(|m| self.index[&self.ctx.inv(m)]).collect())
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses()[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.inv(self.mul(b, a)))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn check(&self, h: &Subgroup) -> Result<()> {
        if h.parent != self.id {
            return Err(Error::domain("subgroup does not belong to this group"));
        }
        Ok(())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::build(self, (0..self.order() as u32).collect(), self.gen_idx.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::build(self, vec![0], vec![])
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[u32]) -> Subgroup {
        let mut c = Closer::new(self);
        for &g in gens {
            c.add(g);
        }
        c.finish()
    }

    pub fn subgroup_from_matrices(&self, ms: &[Matrix]) -> Result<Subgroup> {
        let idx = ms
            .iter()
            .map(|m| self.index_of(m).ok_or_else(|| Error::domain("matrix is not an element of the group")))
            .collect::<Result<Vec<u32>>>()?;
        Ok(self.subgroup(&idx))
    }

    /// Wraps an element set known to be a subgroup, choosing a small generating set.
    pub fn subgroup_from_elements(&self, elems: Vec<u32>) -> Subgroup {
        let mut c = Closer::new(self);
        for &x in &elems {
            c.add(x);
        }
        assert_eq!(c.elems.len(), {
            let mut e = elems.clone();
            e.sort_unstable();
            e.dedup();
            e.len()
        }, "element set is not closed");
        c.finish()
    }

    /// The image of `h` (a subgroup of `other`) in this group, matched by matrices.
    pub fn transfer(&self, other: &EnumeratedGroup, h: &Subgroup) -> Result<Subgroup> {
        other.check(h)?;
        let ms: Vec<Matrix> = h.gens.iter().map(|&i| *other.element(i)).collect();
        self.subgroup_from_matrices(&ms)
    }

    pub fn matrices(&self, h: &Subgroup) -> Vec<Matrix> {
        h.elements.iter().map(|&i| self.elements[i as usize]).collect()
    }

    pub fn generator_matrices(&self, h: &Subgroup) -> Vec<Matrix> {
        h.gens.iter().map(|&i| self.elements[i as usize]).collect()
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut c = Closer::new(self);
        for &g in a.gens.iter().chain(&b.gens) {
            c.add(g);
        }
        c.finish()
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
        let elems: Vec<u32> = small.elements.iter().copied().filter(|&x| big.contains(x)).collect();
        self.subgroup_from_elements(elems)
    }

    /// `{g : g H g^-1 = H}`, by a full scan with early exit on generator images.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        let inv = self.inverses();
        let elems: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.mul(self.mul(g, x), inv[g as usize]))))
            .collect();
        Ok(self.subgroup_from_elements(elems))
    }

    pub fn centralizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        let elems: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&g| h.gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Ok(self.subgroup_from_elements(elems))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole()).expect("whole group belongs to itself")
    }

    /// A Sylow p-subgroup of `h`, grown one p-element of the normalizer at a time.
    pub fn sylow_subgroup(&self, h: &Subgroup, p: u64) -> Result<Subgroup> {
        self.check(h)?;
        let target = arith::p_part(h.order() as u128, p as u128) as usize;
        let mut s = self.trivial();
        while s.order() < target {
            let n = self.intersection(&self.normalizer(&s)?, h);
            let x = n
                .elements
                .iter()
                .copied()
                .find(|&x| !s.contains(x) && arith::p_part(self.element_order(x) as u128, p as u128) == self.element_order(x) as u128 && x != 0)
                .ok_or_else(|| Error::domain("no p-element extends the current p-subgroup"))?;
            let mut gens = s.gens.clone();
            gens.push(x);
            s = self.subgroup(&gens);
        }
        Ok(s)
    }

    /// Normal closure of the generator commutators inside `h`.
    pub fn commutator_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        let mut c = Closer::new(self);
        let mut queue = Vec::new();
        for (i, &a) in h.gens.iter().enumerate() {
            for &b in &h.gens[i + 1..] {
                let x = self.commutator(a, b);
                if c.add(x) {
                    queue.push(x);
                }
            }
        }
        while let Some(x) = queue.pop() {
            for &g in &h.gens {
                let y = self.conj(g, x);
                if c.add(y) {
                    queue.push(y);
                }
            }
        }
        // the new generators may create fresh conjugates; recheck to a fixpoint
        loop {
            let mut grew = false;
            let gens = c.gens.clone();
            for &x in &gens {
                for &g in &h.gens {
                    let y = self.conj(g, x);
                    if c.add(y) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(c.finish())
    }

    /// Whether `k` is a normal subgroup of `h`.
    pub fn is_normal(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.is_subgroup_of(h) && h.gens.iter().all(|&g| k.gens.iter().all(|&x| k.contains(self.conj(g, x))))
    }

    /// Isomorphism type of the abelian quotient `h / k`.
    pub fn quotient_structure(&self, h: &Subgroup, k: &Subgroup) -> Result<AbelianStructure> {
        self.check(h)?;
        self.check(k)?;
        if !self.is_normal(k, h) {
            return Err(Error::domain("K is not a normal subgroup of H"));
        }
        for (i, &a) in h.gens.iter().enumerate() {
            for &b in &h.gens[i + 1..] {
                if !k.contains(self.commutator(a, b)) {
                    return Err(Error::domain("quotient H/K is not abelian"));
                }
            }
        }
        let m = h.order() / k.order();
        if m == 1 {
            return Ok(AbelianStructure::trivial());
        }
        let mut label: FxHashMap<u32, u32> = FxHashMap::default();
        let mut reps = Vec::with_capacity(m);
        for &x in &h.elements {
            if label.contains_key(&x) {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &kk in &k.elements {
                label.insert(self.mul(kk, x), c);
            }
        }
        let orders: Vec<u64> = reps
            .iter()
            .map(|&r| {
                let mut y = r;
                let mut o = 1;
                while label[&y] != 0 {
                    y = self.mul(y, r);
                    o += 1;
                }
                o
            })
            .collect();
        let mut cyclic = Vec::new();
        for (l, _) in arith::factorize(m as u64) {
            // counts[j] = #{x : x^(l^j) = 1}
            let mut counts = vec![1u64];
            let mut j = 1;
            loop {
                let lj = l.pow(j);
                let c = orders.iter().filter(|&&o| lj % o == 0).count() as u64;
                if c == *counts.last().unwrap() {
                    break;
                }
                counts.push(c);
                j += 1;
            }
            let at_least: Vec<u32> =
                counts.windows(2).map(|w| arith::valuation((w[1] / w[0]) as u128, l as u128)).collect();
            for (idx, &c) in at_least.iter().enumerate() {
                let next = at_least.get(idx + 1).copied().unwrap_or(0);
                for _ in 0..c - next {
                    cyclic.push(l.pow(idx as u32 + 1));
                }
            }
        }
        Ok(AbelianStructure::new(0, &cyclic))
    }

    pub fn conjugate(&self, g: u32, h: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        let gens: Vec<u32> = h.gens.iter().map(|&x| self.conj(g, x)).collect();
        Subgroup::build(self, elems, gens)
    }

    fn conjugate_elements(&self, g: u32, elems: &[u32]) -> Vec<u32> {
        let mut v: Vec<u32> = elems.iter().map(|&x| self.conj(g, x)).collect();
        v.sort_unstable();
        v
    }

    /// Partition of `subs` into `G`-conjugacy classes. Classes are listed by
    /// their representative, the member with least sorted element list.
    pub fn subgroup_conjugacy_classes(&self, subs: &[Subgroup]) -> Result<Vec<Vec<usize>>> {
        for s in subs {
            self.check(s)?;
        }
        let mut pos: FxHashMap<&[u32], usize> = FxHashMap::default();
        for (i, s) in subs.iter().enumerate() {
            pos.entry(s.elements.as_slice()).or_insert(i);
        }
        let mut class_of = vec![usize::MAX; subs.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..subs.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = Vec::new();
            let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
            let start = subs[i].elements.clone();
            seen.insert(start.clone());
            let mut queue = vec![start];
            while let Some(e) = queue.pop() {
                if let Some(&j) = pos.get(e.as_slice()) {
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                    }
                }
                for &g in &self.gen_idx {
                    let c = self.conjugate_elements(g, &e);
                    if seen.insert(c.clone()) {
                        queue.push(c);
                    }
                }
            }
            // duplicates of the same subgroup in the input join the class too
            for (j, s) in subs.iter().enumerate() {
                if class_of[j] == usize::MAX && seen.contains(&s.elements) {
                    class_of[j] = cid;
                    members.push(j);
                }
            }
            members.sort_by(|&a, &b| subs[a].elements.cmp(&subs[b].elements).then(a.cmp(&b)));
            classes.push(members);
        }
        classes.sort_by(|a, b| subs[a[0]].elements.cmp(&subs[b[0]].elements));
        Ok(classes)
    }

    /// Cyclic subgroups of the subgroup `h` (including the trivial one), deduplicated.
    pub fn cyclic_subgroups(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut out = Vec::new();
        for &x in &h.elements {
            let mut elems = vec![0u32];
            let mut y = x;
            while y != 0 {
                elems.push(y);
                y = self.mul(y, x);
            }
            elems.sort_unstable();
            if seen.insert(elems.clone()) {
                out.push(Subgroup::build(self, elems, if x == 0 { vec![] } else { vec![x] }));
            }
        }
        out
    }

    /// Every subgroup of `h`, built as joins of cyclic subgroups. Fails when
    /// more than `cap` subgroups appear.
    pub fn all_subgroups(&self, h: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
        self.check(h)?;
        let cyclics = self.cyclic_subgroups(h);
        let mut seen: FxHashSet<Vec<u32>> = cyclics.iter().map(|c| c.elements.clone()).collect();
        let mut all = cyclics.clone();
        let mut frontier: Vec<usize> = (0..all.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &i in &frontier {
                for c in &cyclics {
                    if c.gens.is_empty() || all[i].contains(c.gens[0]) {
                        continue;
                    }
                    let j = self.join(&all[i], c);
                    if seen.insert(j.elements.clone()) {
                        if all.len() >= cap {
                            return Err(Error::CapExceeded { what: "subgroup lattice".into(), cap });
                        }
                        all.push(j);
                        next.push(all.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(all)
    }

    /// All elementary abelian p-subgroups (the trivial one included), each
    /// flagged maximal or not.
    pub fn elementary_abelian_subgroups(&self, p: u64) -> Vec<ElementaryAbelian> {
        let n = self.order() as u32;
        let order_p: Vec<u32> = (1..n).into_par_iter().filter(|&x| self.pow(x, p) == 0).collect();
        // cyclic subgroups of order p, keyed by their least element
        let mut cyc_of: FxHashMap<u32, usize> = FxHashMap::default();
        let mut cyc_gen: Vec<u32> = Vec::new();
        for &x in &order_p {
            if cyc_of.contains_key(&x) {
                continue;
            }
            let id = cyc_gen.len();
            cyc_gen.push(x);
            let mut y = x;
            while y != 0 {
                cyc_of.insert(y, id);
                y = self.mul(y, x);
            }
        }
        let mats: Vec<Matrix> = cyc_gen.iter().map(|&x| self.elements[x as usize]).collect();
        let ctx = &self.ctx;
        let commuting: Vec<Vec<usize>> = (0..cyc_gen.len())
            .into_par_iter()
            .map(|i| {
                (0..cyc_gen.len())
                    .filter(|&j| j != i && ctx.mul(&mats[i], &mats[j]) == ctx.mul(&mats[j], &mats[i]))
                    .collect()
            })
            .collect();

        let mut out = vec![ElementaryAbelian {
            subgroup: self.trivial(),
            rank: 0,
            maximal: order_p.is_empty(),
        }];
        // level: (sorted elements, generator list, candidate cyclic ids)
        let mut level: Vec<(Vec<u32>, Vec<u32>, Vec<usize>)> = (0..cyc_gen.len())
            .map(|c| {
                let mut elems = vec![0u32];
                let x = cyc_gen[c];
                let mut y = x;
                while y != 0 {
                    elems.push(y);
                    y = self.mul(y, x);
                }
                elems.sort_unstable();
                (elems, vec![x], commuting[c].clone())
            })
            .collect();
        let mut rank = 1;
        while !level.is_empty() {
            let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
            let mut next = Vec::new();
            for (elems, gens, cands) in &level {
                let own: FxHashSet<usize> = elems[1..].iter().map(|x| cyc_of[x]).collect();
                let outside: Vec<usize> = cands.iter().copied().filter(|c| !own.contains(c)).collect();
                out.push(ElementaryAbelian {
                    subgroup: Subgroup::build(self, elems.clone(), gens.clone()),
                    rank,
                    maximal: outside.is_empty(),
                });
                let mut covered: FxHashSet<usize> = FxHashSet::default();
                for &c in &outside {
                    if covered.contains(&c) {
                        continue;
                    }
                    let y = cyc_gen[c];
                    let mut bigger = Vec::with_capacity(elems.len() * p as usize);
                    let mut yp = 0u32;
                    for _ in 0..p {
                        for &e in elems {
                            bigger.push(self.mul(e, yp));
                        }
                        yp = self.mul(yp, y);
                    }
                    bigger.sort_unstable();
                    covered.extend(bigger[1..].iter().map(|x| cyc_of[x]));
                    if seen.insert(bigger.clone()) {
                        let mut g2 = gens.clone();
                        g2.push(y);
                        let cand: Vec<usize> = cands.iter().copied().filter(|d| commuting[c].binary_search(d).is_ok()).collect();
                        next.push((bigger, g2, cand));
                    }
                }
            }
            level = next;
            rank += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn sl2(q: u64) -> EnumeratedGroup {
        let f = FieldSpec::new(q).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        let mut gens = Vec::new();
        for j in 0..f.degree() as u64 {
            let a = f.exp(j);
            gens.push(ctx.from_rows(&[vec![1, a], vec![0, 1]]).unwrap());
            gens.push(ctx.from_rows(&[vec![1, 0], vec![a, 1]]).unwrap());
        }
        closure(&ctx, &gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn closure_orders() {
        let f = FieldSpec::new(2).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        assert_eq!(closure(&ctx, &[ctx.identity()], 10).unwrap().order(), 1);
        assert_eq!(sl2(3).order(), 24);
        assert_eq!(sl2(4).order(), 60);
        let f5 = FieldSpec::new(5).unwrap();
        let c5 = MatrixContext::new(&f5, 2, 1).unwrap();
        let gl = closure(&c5, &[c5.from_ints(&[&[1, 1], &[0, 1]]).unwrap(), c5.from_ints(&[&[0, 1], &[-1, 0]]).unwrap(), c5.diag(&[2, 1]).unwrap()], DEFAULT_CAP).unwrap();
        assert_eq!(gl.order(), 480);
        assert!(matches!(closure(&c5, gl.generators(), 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn closure_idempotent() {
        let g = sl2(3);
        let again = closure(g.ctx(), g.elements(), DEFAULT_CAP).unwrap();
        assert_eq!(again.order(), g.order());
    }

    #[test]
    fn normalizers_and_commutators() {
        let g = sl2(3);
        let d = g.commutator_subgroup(&g.whole()).unwrap();
        assert_eq!(d.order(), 8);
        assert_eq!(g.normalizer(&d).unwrap().order(), 24);
        assert_eq!(g.quotient_structure(&g.whole(), &d).unwrap(), AbelianStructure::cyclic(3));
        assert!(g.quotient_structure(&d, &d).unwrap().is_trivial());

        let g5 = sl2(5);
        assert_eq!(g5.commutator_subgroup(&g5.whole()).unwrap().order(), 120);
        let two = g5.elementary_abelian_subgroups(2);
        assert_eq!(two.iter().map(|e| e.rank).max(), Some(1));
        let n = g5.normalizer(&g5.whole()).unwrap();
        assert_eq!(n.order(), 120);
    }

    #[test]
    fn sylow_two_of_sl25_normalizer() {
        let g = sl2(5);
        // a quaternion subgroup: monomial matrices of det 1
        let q8 = g
            .subgroup_from_matrices(&[g.ctx().diag(&[2, 3]).unwrap(), g.ctx().from_ints(&[&[0, 1], &[-1, 0]]).unwrap()])
            .unwrap();
        assert_eq!(q8.order(), 8);
        let n = g.normalizer(&q8).unwrap();
        assert_eq!(n.order(), 24);
        assert_eq!(g.normalizer(&n).unwrap().order(), 24);
        assert!(q8.is_subgroup_of(&n));
    }

    #[test]
    fn a5_elementary_abelian() {
        let g = sl2(4);
        let e2 = g.elementary_abelian_subgroups(2);
        let v4: Vec<_> = e2.iter().filter(|e| e.rank == 2).collect();
        assert_eq!(v4.len(), 5);
        assert!(v4.iter().all(|e| e.maximal));
        let subs: Vec<Subgroup> = v4.iter().map(|e| e.subgroup.clone()).collect();
        assert_eq!(g.subgroup_conjugacy_classes(&subs).unwrap().len(), 1);
        assert_eq!(g.subgroup_conjugacy_classes(&subs[..1]).unwrap().len(), 1);
        let e7 = g.elementary_abelian_subgroups(7);
        assert_eq!(e7.len(), 1);
        assert!(e7[0].maximal);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = sl2(3);
        let q8 = g.commutator_subgroup(&g.whole()).unwrap();
        let f = FieldSpec::new(3).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        let q = closure(&ctx, &g.generator_matrices(&q8), 100).unwrap();
        let e = q.elementary_abelian_subgroups(2);
        assert_eq!(e.len(), 2);
        assert_eq!(e[1].rank, 1);
        assert!(e[1].maximal && !e[0].maximal);
    }

    #[test]
    fn d8_klein_fours_fused_in_wrapper() {
        // D8 as monomial 2x2 matrices over GF(3); the Klein fours are
        // <diag(-1,1), -I> and <antidiag(1,1), -I>, swapped inside GL(2,3)'s SD16
        let f = FieldSpec::new(3).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        let gl = closure(&ctx, &[ctx.from_ints(&[&[1, 1], &[0, 1]]).unwrap(), ctx.from_ints(&[&[0, 1], &[1, 0]]).unwrap(), ctx.diag(&[2, 1]).unwrap()], DEFAULT_CAP).unwrap();
        assert_eq!(gl.order(), 48);
        let d8 = gl.subgroup_from_matrices(&[ctx.diag(&[2, 1]).unwrap(), ctx.from_ints(&[&[0, 1], &[1, 0]]).unwrap()]).unwrap();
        assert_eq!(d8.order(), 8);
        let fours: Vec<Subgroup> = gl
            .elementary_abelian_subgroups(2)
            .into_iter()
            .filter(|e| e.rank == 2 && e.subgroup.is_subgroup_of(&d8))
            .map(|e| e.subgroup)
            .collect();
        assert_eq!(fours.len(), 2);
        assert_eq!(gl.subgroup_conjugacy_classes(&fours).unwrap().len(), 1);
        let inside = closure(&ctx, &gl.generator_matrices(&d8), 100).unwrap();
        let f2: Vec<Subgroup> = fours.iter().map(|s| inside.transfer(&gl, s).unwrap()).collect();
        assert_eq!(inside.subgroup_conjugacy_classes(&f2).unwrap().len(), 2);
    }

    #[test]
    fn subgroup_lattice_of_q8() {
        let g = sl2(3);
        let q8 = g.commutator_subgroup(&g.whole()).unwrap();
        let subs = g.all_subgroups(&q8, 1000).unwrap();
        // 1, <-1>, three C4, Q8
        assert_eq!(subs.len(), 6);
        let s3 = sl2(2);
        assert_eq!(s3.all_subgroups(&s3.whole(), 100).unwrap().len(), 6);
    }

    #[test]
    fn foreign_subgroups_rejected() {
        let a = sl2(3);
        let b = sl2(3);
        assert!(b.normalizer(&a.whole()).is_err());
    }
}
