//! Brute-force descent laboratory over finite monoids.
//!
//! Modules over a monoid `A` in sets are finite `A`-sets. Base change along
//! `f : A -> B` is the coequalizer `M x A x B => M x B`, computed by
//! union-find. Flatness (preservation of finite limits), joint
//! conservativity, the sheaf equalizer for module sections and the full
//! descent equivalence are all checked exhaustively on carriers up to a
//! bound. Nothing here claims a theorem: every positive answer is a
//! "no counterexample up to the bound" report.

use crate::error::{Budget, Error, Result};
use crate::monoid::{
    enumerate_commutative_monoids, hom_enumerate, FiniteMonoid, Monoid, MonoidElement, MonoidHom,
};
use serde::Serialize;
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Finite A-sets

/// A finite module over a finite monoid in sets: a carrier with an action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteASet {
    pub base: FiniteMonoid,
    pub carrier: usize,
    /// `action[a][x]` = a . x.
    pub action: Vec<Vec<usize>>,
}

impl FiniteASet {
    pub fn new(base: FiniteMonoid, carrier: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != base.size() || action.iter().any(|r| r.len() != carrier) {
            return Err(Error::invalid("action table has wrong shape"));
        }
        for r in &action {
            if r.iter().any(|&x| x >= carrier) {
                return Err(Error::invalid("action lands outside the carrier"));
            }
        }
        for x in 0..carrier {
            if action[base.unit][x] != x {
                return Err(Error::invalid("unit must act as identity"));
            }
        }
        for a in 0..base.size() {
            for b in 0..base.size() {
                for x in 0..carrier {
                    if action[a][action[b][x]] != action[base.op(a, b)][x] {
                        return Err(Error::invalid("action does not respect the operation"));
                    }
                }
            }
        }
        Ok(FiniteASet { base, carrier, action })
    }

    /// The free module of rank one: the monoid acting on itself.
    pub fn free(base: &FiniteMonoid) -> Self {
        let action = (0..base.size())
            .map(|a| (0..base.size()).map(|x| base.op(a, x)).collect())
            .collect();
        FiniteASet { base: base.clone(), carrier: base.size(), action }
    }

    /// The terminal module: one point.
    pub fn point(base: &FiniteMonoid) -> Self {
        FiniteASet {
            base: base.clone(),
            carrier: 1,
            action: vec![vec![0]; base.size()],
        }
    }

    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a][x]
    }

    /// Binary product with the diagonal action, with projections encoded by
    /// the pairing `x * other.carrier + y`.
    pub fn product(&self, other: &FiniteASet) -> FiniteASet {
        let carrier = self.carrier * other.carrier;
        let action = (0..self.base.size())
            .map(|a| {
                (0..carrier)
                    .map(|xy| {
                        let (x, y) = (xy / other.carrier, xy % other.carrier);
                        self.act(a, x) * other.carrier + other.act(a, y)
                    })
                    .collect()
            })
            .collect();
        FiniteASet { base: self.base.clone(), carrier, action }
    }

    /// The equalizer of two equivariant maps out of this module, as the
    /// sub-carrier where they agree (an `A`-subset), plus the inclusion.
    pub fn equalizer(&self, u: &[usize], v: &[usize]) -> (FiniteASet, Vec<usize>) {
        let included: Vec<usize> = (0..self.carrier).filter(|&x| u[x] == v[x]).collect();
        let index_of: BTreeMap<usize, usize> =
            included.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let action = (0..self.base.size())
            .map(|a| included.iter().map(|&x| index_of[&self.act(a, x)]).collect())
            .collect();
        (
            FiniteASet { base: self.base.clone(), carrier: included.len(), action },
            included,
        )
    }
}

/// All equivariant maps between two modules over the same base, in
/// lexicographic order of the image tables.
pub fn aset_maps(x: &FiniteASet, y: &FiniteASet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if x.carrier == 0 {
        return vec![Vec::new()];
    }
    let mut map = vec![0usize; x.carrier];
    loop {
        let equivariant = (0..x.base.size()).all(|a| {
            (0..x.carrier).all(|p| map[x.act(a, p)] == y.act(a, map[p]))
        });
        if equivariant {
            out.push(map.clone());
        }
        let mut slot = x.carrier;
        let mut done = true;
        while slot > 0 {
            slot -= 1;
            map[slot] += 1;
            if map[slot] < y.carrier {
                done = false;
                break;
            }
            map[slot] = 0;
        }
        if done {
            break;
        }
    }
    out
}

pub fn is_bijective(map: &[usize], target_size: usize) -> bool {
    if map.len() != target_size {
        return false;
    }
    let mut seen = vec![false; target_size];
    for &m in map {
        if seen[m] {
            return false;
        }
        seen[m] = true;
    }
    true
}

/// Enumerate all valid module structures on carriers `1..=bound`, in a
/// deterministic order, optionally up to equivariant isomorphism.
pub fn enumerate_asets(base: &FiniteMonoid, bound: usize, up_to_iso: bool) -> Vec<FiniteASet> {
    let mut out: Vec<FiniteASet> = Vec::new();
    for carrier in 1..=bound {
        // Choose the action of each non-unit element; the unit row is fixed.
        let actors: Vec<usize> = (0..base.size()).filter(|&a| a != base.unit).collect();
        let cells = actors.len() * carrier;
        let mut digits = vec![0usize; cells];
        loop {
            let mut action = vec![vec![0usize; carrier]; base.size()];
            for x in 0..carrier {
                action[base.unit][x] = x;
            }
            for (ai, &a) in actors.iter().enumerate() {
                for x in 0..carrier {
                    action[a][x] = digits[ai * carrier + x];
                }
            }
            if let Ok(m) = FiniteASet::new(base.clone(), carrier, action) {
                let fresh = !up_to_iso
                    || !out
                        .iter()
                        .filter(|m2| m2.carrier == carrier)
                        .any(|m2| asets_isomorphic(m2, &m));
                if fresh {
                    out.push(m);
                }
            }
            let mut slot = cells;
            let mut done = true;
            while slot > 0 {
                slot -= 1;
                digits[slot] += 1;
                if digits[slot] < carrier {
                    done = false;
                    break;
                }
                digits[slot] = 0;
            }
            if done || cells == 0 {
                break;
            }
        }
    }
    out
}

pub fn asets_isomorphic(x: &FiniteASet, y: &FiniteASet) -> bool {
    if x.carrier != y.carrier {
        return false;
    }
    aset_maps(x, y).iter().any(|m| is_bijective(m, y.carrier))
}

// ---------------------------------------------------------------------------
// Tensor products

/// A monoid map between finite monoids as a raw element table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leg {
    pub source: FiniteMonoid,
    pub target: FiniteMonoid,
    pub map: Vec<usize>,
}

impl Leg {
    pub fn new(source: FiniteMonoid, target: FiniteMonoid, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return Err(Error::invalid("leg table has wrong shape"));
        }
        if map[source.unit] != target.unit {
            return Err(Error::invalid("leg must preserve the unit"));
        }
        for i in 0..source.size() {
            for j in 0..source.size() {
                if map[source.op(i, j)] != target.op(map[i], map[j]) {
                    return Err(Error::invalid("leg must be a homomorphism"));
                }
            }
        }
        Ok(Leg { source, target, map })
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        Leg { source: m.clone(), target: m.clone(), map: (0..m.size()).collect() }
    }

    pub fn compose(after: &Leg, first: &Leg) -> Result<Leg> {
        if first.target != after.source {
            return Err(Error::invalid("legs do not compose"));
        }
        Leg::new(
            first.source.clone(),
            after.target.clone(),
            first.map.iter().map(|&x| after.map[x]).collect(),
        )
    }

    pub fn from_hom(hom: &MonoidHom) -> Result<Leg> {
        let (Monoid::Finite(src), Monoid::Finite(dst)) = (&hom.source, &hom.target) else {
            return Err(Error::invalid("descent legs must join finite monoids"));
        };
        let map: Vec<usize> = hom
            .images
            .iter()
            .map(|x| match x {
                MonoidElement::Index(i) => Ok(*i),
                _ => Err(Error::invalid("finite hom images must be indices")),
            })
            .collect::<Result<_>>()?;
        Leg::new(src.clone(), dst.clone(), map)
    }

    pub fn to_hom(&self) -> MonoidHom {
        MonoidHom {
            source: Monoid::Finite(self.source.clone()),
            target: Monoid::Finite(self.target.clone()),
            images: self.map.iter().map(|&i| MonoidElement::Index(i)).collect(),
            structural: None,
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
    /// Canonical class numbering by minimal member.
    fn classes(&mut self, n: usize) -> (Vec<usize>, usize) {
        let mut class_of = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if class_of[r] == usize::MAX {
                class_of[r] = next;
                next += 1;
            }
            class_of[x] = class_of[r];
        }
        (class_of, next)
    }
}

/// Result of tensoring a module along a leg: the module over the target
/// together with the class of every pair `(m, b)`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub result: FiniteASet,
    /// `class[m][b]` = class index of `m ⊗ b`.
    pub class: Vec<Vec<usize>>,
}

impl Tensor {
    /// Class of `m ⊗ 1`, the canonical image of `m`.
    pub fn unit_class(&self, m: usize) -> usize {
        self.class[m][self.result.base.unit]
    }
}

/// Base change `M ⊗_A B` along `f : A -> B`: the coequalizer of
/// `(a.m, b) ~ (m, f(a).b)` on `M x B`, with its `B`-action.
pub fn tensor_aset(m: &FiniteASet, f: &Leg) -> Result<Tensor> {
    if m.base != f.source {
        return Err(Error::invalid("module base does not match the leg source"));
    }
    let b = &f.target;
    let nb = b.size();
    let pairs = m.carrier * nb;
    let idx = |x: usize, y: usize| x * nb + y;
    let mut uf = UnionFind::new(pairs);
    for a in 0..m.base.size() {
        for x in 0..m.carrier {
            for y in 0..nb {
                uf.union(idx(m.act(a, x), y), idx(x, b.op(f.map[a], y)));
            }
        }
    }
    let (class_flat, count) = uf.classes(pairs);
    let class: Vec<Vec<usize>> = (0..m.carrier)
        .map(|x| (0..nb).map(|y| class_flat[idx(x, y)]).collect())
        .collect();
    // The B-action on classes: b' . [(x, y)] = [(x, y * b')]. The relation is
    // closed under right multiplication, so this is well defined; assert it.
    let mut action = vec![vec![usize::MAX; count]; nb];
    for x in 0..m.carrier {
        for y in 0..nb {
            for bp in 0..nb {
                let src = class[x][y];
                let dst = class[x][b.op(y, bp)];
                if action[bp][src] == usize::MAX {
                    action[bp][src] = dst;
                } else if action[bp][src] != dst {
                    return Err(Error::invalid("tensor action is not well defined"));
                }
            }
        }
    }
    let action: Vec<Vec<usize>> = action
        .into_iter()
        .map(|row| row.into_iter().map(|x| x).collect())
        .collect();
    let result = FiniteASet::new(b.clone(), count, action)?;
    Ok(Tensor { result, class })
}

/// Induced map on tensors: given an equivariant `u : M -> N` over `A` and a
/// leg `f : A -> B`, the map `M ⊗ B -> N ⊗ B`.
pub fn tensor_map(u: &[usize], m: &Tensor, n: &Tensor) -> Vec<usize> {
    let nb = m.result.base.size();
    let mut out = vec![usize::MAX; m.result.carrier];
    for (x, row) in m.class.iter().enumerate() {
        for y in 0..nb {
            out[row[y]] = n.class[u[x]][y];
        }
    }
    out
}

/// Pushout `B ⊗_A C` of two legs out of the same base, with the congruence
/// generated by `(f(a) b, c) ~ (b, g(a) c)` closed under multiplication.
#[derive(Clone, Debug)]
pub struct MonoidPushout {
    pub object: FiniteMonoid,
    pub from_left: Leg,
    pub from_right: Leg,
    /// Class of the pair (b, c).
    pub class: Vec<Vec<usize>>,
}

pub fn tensor_monoids(f: &Leg, g: &Leg) -> Result<MonoidPushout> {
    if f.source != g.source {
        return Err(Error::invalid("pushout legs must share the base"));
    }
    let (b, c) = (&f.target, &g.target);
    let (nb, nc) = (b.size(), c.size());
    let pairs = nb * nc;
    let idx = |x: usize, y: usize| x * nc + y;
    let mut uf = UnionFind::new(pairs);
    for a in 0..f.source.size() {
        for x in 0..nb {
            for y in 0..nc {
                uf.union(idx(b.op(f.map[a], x), y), idx(x, c.op(g.map[a], y)));
            }
        }
    }
    // Close the equivalence into a congruence: if p ~ q then p*z ~ q*z.
    loop {
        let mut changed = false;
        let mut reps: Vec<Vec<usize>> = Vec::new();
        {
            let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for p in 0..pairs {
                by_root.entry(uf.find(p)).or_default().push(p);
            }
            for members in by_root.into_values() {
                reps.push(members);
            }
        }
        for members in &reps {
            let p0 = members[0];
            for &p in &members[1..] {
                for z in 0..pairs {
                    let (zx, zy) = (z / nc, z % nc);
                    let (px, py) = (p / nc, p % nc);
                    let (qx, qy) = (p0 / nc, p0 % nc);
                    let pz = idx(b.op(px, zx), c.op(py, zy));
                    let qz = idx(b.op(qx, zx), c.op(qy, zy));
                    if uf.find(pz) != uf.find(qz) {
                        uf.union(pz, qz);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let (class_flat, count) = uf.classes(pairs);
    let class: Vec<Vec<usize>> = (0..nb).map(|x| (0..nc).map(|y| class_flat[idx(x, y)]).collect()).collect();
    // Multiplication on classes.
    let mut table = vec![vec![usize::MAX; count]; count];
    for x1 in 0..nb {
        for y1 in 0..nc {
            for x2 in 0..nb {
                for y2 in 0..nc {
                    let p = class[x1][y1];
                    let q = class[x2][y2];
                    let r = class[b.op(x1, x2)][c.op(y1, y2)];
                    if table[p][q] == usize::MAX {
                        table[p][q] = r;
                    } else if table[p][q] != r {
                        return Err(Error::invalid("pushout product is not well defined"));
                    }
                }
            }
        }
    }
    let unit = class[b.unit][c.unit];
    let elements = (0..count).map(|i| format!("c{i}")).collect();
    let object = FiniteMonoid::new(elements, unit, table)?;
    let from_left = Leg::new(b.clone(), object.clone(), (0..nb).map(|x| class[x][c.unit]).collect())?;
    let from_right = Leg::new(c.clone(), object.clone(), (0..nc).map(|y| class[b.unit][y]).collect())?;
    Ok(MonoidPushout { object, from_left, from_right, class })
}

// ---------------------------------------------------------------------------
// Covers and verdicts

/// A cover of a finite monoid: finitely many legs out of the same base.
#[derive(Clone, Debug)]
pub struct Cover {
    pub base: FiniteMonoid,
    pub legs: Vec<Leg>,
}

impl Cover {
    pub fn new(base: FiniteMonoid, legs: Vec<Leg>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::invalid("a cover needs at least one leg"));
        }
        for leg in &legs {
            if leg.source != base {
                return Err(Error::invalid("every leg must start at the base"));
            }
        }
        Ok(Cover { base, legs })
    }

    pub fn identity(base: &FiniteMonoid) -> Self {
        Cover { base: base.clone(), legs: vec![Leg::identity(base)] }
    }

    /// Does some leg admit a retraction (a hom back splitting the leg)?
    pub fn is_split(&self, budget: &Budget) -> Result<bool> {
        for leg in &self.legs {
            let homs = hom_enumerate(&Monoid::Finite(leg.target.clone()), &self.base, budget)?;
            for r in homs {
                let rl = Leg::from_hom(&r)?;
                let composed = Leg::compose(&rl, leg)?;
                if composed.map == Leg::identity(&self.base).map {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum BoundedVerdict {
    VerifiedUpTo(usize),
    CounterexampleFound(String),
}

impl BoundedVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BoundedVerdict::VerifiedUpTo(_))
    }
}

/// Flatness of a leg up to a carrier bound: base change must preserve the
/// terminal module, binary products and equalizers.
pub fn is_flat_bounded(leg: &Leg, bound: usize, budget: &Budget) -> Result<BoundedVerdict> {
    let base = &leg.source;
    // Terminal.
    let pt = FiniteASet::point(base);
    let pt_tensor = tensor_aset(&pt, leg)?;
    if pt_tensor.result.carrier != 1 {
        return Ok(BoundedVerdict::CounterexampleFound(
            "terminal module is not preserved".into(),
        ));
    }
    let asets = enumerate_asets(base, bound, true);
    let mut steps: u64 = 0;
    for m in &asets {
        for n in &asets {
            steps += 1;
            if steps > budget.max_steps {
                return Err(Error::budget("flatness search", steps, budget.max_steps));
            }
            // Products: (M x N) ⊗ B -> (M ⊗ B) x (N ⊗ B) must be bijective.
            let prod = m.product(n);
            let t_prod = tensor_aset(&prod, leg)?;
            let tm = tensor_aset(m, leg)?;
            let tn = tensor_aset(n, leg)?;
            let mut seen = vec![false; tm.result.carrier * tn.result.carrier];
            let mut ok = true;
            let mut hits = 0usize;
            let mut image = vec![usize::MAX; t_prod.result.carrier];
            for xy in 0..prod.carrier {
                let (x, y) = (xy / n.carrier, xy % n.carrier);
                for bidx in 0..leg.target.size() {
                    let src = t_prod.class[xy][bidx];
                    let dst = tm.class[x][bidx] * tn.result.carrier + tn.class[y][bidx];
                    if image[src] == usize::MAX {
                        image[src] = dst;
                        if seen[dst] {
                            ok = false;
                        } else {
                            seen[dst] = true;
                            hits += 1;
                        }
                    } else if image[src] != dst {
                        ok = false;
                    }
                }
            }
            if !ok || hits != tm.result.carrier * tn.result.carrier || t_prod.result.carrier != hits
            {
                return Ok(BoundedVerdict::CounterexampleFound(format!(
                    "product of carriers {} and {} is not preserved",
                    m.carrier, n.carrier
                )));
            }
            // Equalizers of all parallel pairs M => N.
            let maps = aset_maps(m, n);
            for u in &maps {
                for v in &maps {
                    steps += 1;
                    if steps > budget.max_steps {
                        return Err(Error::budget("flatness search", steps, budget.max_steps));
                    }
                    let (eq, included) = m.equalizer(u, v);
                    let t_eq = tensor_aset(&eq, leg)?;
                    let tu = tensor_map(u, &tm, &tn);
                    let tv = tensor_map(v, &tm, &tn);
                    // Downstairs equalizer inside M ⊗ B.
                    let agree: Vec<usize> =
                        (0..tm.result.carrier).filter(|&x| tu[x] == tv[x]).collect();
                    // Canonical map E ⊗ B -> M ⊗ B.
                    let mut can = vec![usize::MAX; t_eq.result.carrier];
                    let mut can_ok = true;
                    for (e_idx, &m_idx) in included.iter().enumerate() {
                        for bidx in 0..leg.target.size() {
                            let src = t_eq.class[e_idx][bidx];
                            let dst = tm.class[m_idx][bidx];
                            if can[src] == usize::MAX {
                                can[src] = dst;
                            } else if can[src] != dst {
                                can_ok = false;
                            }
                        }
                    }
                    let mut image: Vec<usize> = can.clone();
                    image.sort_unstable();
                    image.dedup();
                    let injective = image.len() == can.len();
                    let onto_agree = image == agree;
                    if !can_ok || !injective || !onto_agree {
                        return Ok(BoundedVerdict::CounterexampleFound(format!(
                            "an equalizer of modules with carriers {} and {} is not preserved",
                            m.carrier, n.carrier
                        )));
                    }
                }
            }
        }
    }
    Ok(BoundedVerdict::VerifiedUpTo(bound))
}

/// Joint conservativity up to a bound: no non-isomorphism of modules becomes
/// an isomorphism after base change along every leg.
pub fn is_conservative_bounded(
    cover: &Cover,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedVerdict> {
    let asets = enumerate_asets(&cover.base, bound, true);
    let mut steps: u64 = 0;
    for m in &asets {
        for n in &asets {
            for u in aset_maps(m, n) {
                steps += 1;
                if steps > budget.max_steps {
                    return Err(Error::budget("conservativity search", steps, budget.max_steps));
                }
                if is_bijective(&u, n.carrier) && m.carrier == n.carrier {
                    continue;
                }
                let mut all_iso = true;
                for leg in &cover.legs {
                    let tm = tensor_aset(m, leg)?;
                    let tn = tensor_aset(n, leg)?;
                    let tu = tensor_map(&u, &tm, &tn);
                    if !(tm.result.carrier == tn.result.carrier
                        && is_bijective(&tu, tn.result.carrier))
                    {
                        all_iso = false;
                        break;
                    }
                }
                if all_iso {
                    return Ok(BoundedVerdict::CounterexampleFound(format!(
                        "non-isomorphism of carriers {} -> {} becomes invertible on every leg",
                        m.carrier, n.carrier
                    )));
                }
            }
        }
    }
    Ok(BoundedVerdict::VerifiedUpTo(bound))
}

/// The section diagram for one module: `M -> prod_i M⊗B_i => prod_ij M⊗B_ij`
/// must be an equalizer. Checked by explicit element chase.
pub fn sheaf_equalizer_check(cover: &Cover, m: &FiniteASet, _budget: &Budget) -> Result<bool> {
    if m.base != cover.base {
        return Err(Error::invalid("module base does not match the cover"));
    }
    let k = cover.legs.len();
    let tensors: Vec<Tensor> = cover
        .legs
        .iter()
        .map(|leg| tensor_aset(m, leg))
        .collect::<Result<_>>()?;
    // Pairwise pushouts and the module over them.
    let mut push: Vec<Vec<MonoidPushout>> = Vec::new();
    let mut m_pair: Vec<Vec<Tensor>> = Vec::new();
    for i in 0..k {
        let mut row_p = Vec::new();
        let mut row_m = Vec::new();
        for j in 0..k {
            let p = tensor_monoids(&cover.legs[i], &cover.legs[j])?;
            let a_to_pair = Leg::compose(&p.from_left, &cover.legs[i])?;
            let t = tensor_aset(m, &a_to_pair)?;
            row_p.push(p);
            row_m.push(t);
        }
        push.push(row_p);
        m_pair.push(row_m);
    }

    // Maps M⊗B_i -> M⊗B_ij (left leg) and M⊗B_j -> M⊗B_ij (right leg):
    // m⊗b |-> m⊗l(b).
    let push_left = |i: usize, j: usize, t: &Tensor| -> Vec<usize> {
        let mut out = vec![usize::MAX; t.result.carrier];
        for x in 0..m.carrier {
            for b in 0..cover.legs[i].target.size() {
                out[t.class[x][b]] = m_pair[i][j].class[x][push[i][j].from_left.map[b]];
            }
        }
        out
    };
    let push_right = |i: usize, j: usize, t: &Tensor| -> Vec<usize> {
        let mut out = vec![usize::MAX; t.result.carrier];
        for x in 0..m.carrier {
            for b in 0..cover.legs[j].target.size() {
                out[t.class[x][b]] = m_pair[i][j].class[x][push[i][j].from_right.map[b]];
            }
        }
        out
    };

    // Elements of the equalizer: tuples (c_i) in prod_i M⊗B_i with matching
    // images in every M⊗B_ij.
    let sizes: Vec<usize> = tensors.iter().map(|t| t.result.carrier).collect();
    let mut tuple = vec![0usize; k];
    let mut equalizer: Vec<Vec<usize>> = Vec::new();
    loop {
        let mut ok = true;
        'outer: for i in 0..k {
            for j in 0..k {
                let li = push_left(i, j, &tensors[i]);
                let rj = push_right(i, j, &tensors[j]);
                if li[tuple[i]] != rj[tuple[j]] {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            equalizer.push(tuple.clone());
        }
        let mut slot = k;
        let mut done = true;
        while slot > 0 {
            slot -= 1;
            tuple[slot] += 1;
            if tuple[slot] < sizes[slot] {
                done = false;
                break;
            }
            tuple[slot] = 0;
        }
        if done {
            break;
        }
    }

    // The canonical map M -> equalizer must be a bijection.
    let mut images: Vec<Vec<usize>> = Vec::new();
    for x in 0..m.carrier {
        images.push((0..k).map(|i| tensors[i].unit_class(x)).collect());
    }
    let mut im_sorted = images.clone();
    im_sorted.sort();
    im_sorted.dedup();
    let injective = im_sorted.len() == m.carrier;
    let mut eq_sorted = equalizer.clone();
    eq_sorted.sort();
    Ok(injective && im_sorted == eq_sorted)
}

// ---------------------------------------------------------------------------
// Descent data and the comparison functor

/// Maps out of a tensor module are determined by the images of the unit
/// classes `m ⊗ 1`; enumerate assignments and keep the consistent ones.
pub fn maps_from_tensor(src: &Tensor, dst: &FiniteASet) -> Vec<Vec<usize>> {
    let rows = src.class.len();
    let d_size = src.result.base.size();
    debug_assert_eq!(dst.base, src.result.base);
    let mut out = Vec::new();
    if rows == 0 {
        return vec![vec![]];
    }
    let mut assign = vec![0usize; rows];
    loop {
        let mut map = vec![usize::MAX; src.result.carrier];
        let mut ok = true;
        'fill: for (m, row) in src.class.iter().enumerate() {
            for d in 0..d_size {
                let value = dst.act(d, assign[m]);
                let slot = row[d];
                if map[slot] == usize::MAX {
                    map[slot] = value;
                } else if map[slot] != value {
                    ok = false;
                    break 'fill;
                }
            }
        }
        if ok {
            out.push(map);
        }
        let mut slot = rows;
        let mut done = true;
        while slot > 0 {
            slot -= 1;
            assign[slot] += 1;
            if assign[slot] < dst.carrier {
                done = false;
                break;
            }
            assign[slot] = 0;
        }
        if done {
            break;
        }
    }
    out
}

/// Push a map `x⊗D -> y⊗D` along a monoid map `h : D -> T` to a map
/// `x⊗T -> y⊗T`. Needs per-class representatives of `y⊗D`.
#[allow(clippy::too_many_arguments)]
fn push_tensor_map(
    phi: &[usize],
    x_d: &Tensor,
    y_d: &Tensor,
    h: &Leg,
    x_t: &Tensor,
    y_t: &Tensor,
) -> Result<Vec<usize>> {
    // Representative pair (row, d) for each class of y⊗D.
    let mut rep: Vec<Option<(usize, usize)>> = vec![None; y_d.result.carrier];
    for (n, row) in y_d.class.iter().enumerate() {
        for (d, &cls) in row.iter().enumerate() {
            if rep[cls].is_none() {
                rep[cls] = Some((n, d));
            }
        }
    }
    let t_size = x_t.result.base.size();
    let mut out = vec![usize::MAX; x_t.result.carrier];
    for (m, row_t) in x_t.class.iter().enumerate() {
        // phi on the unit class of m upstairs.
        let img = phi[x_d.class[m][x_d.result.base.unit]];
        let (n, d) = rep[img].ok_or_else(|| Error::invalid("class without representative"))?;
        let base_img = y_t.class[n][h.map[d]];
        for t in 0..t_size {
            let slot = row_t[t];
            let value = y_t.result.act(t, base_img);
            if out[slot] == usize::MAX {
                out[slot] = value;
            } else if out[slot] != value {
                return Err(Error::invalid("pushed map is not well defined"));
            }
        }
    }
    if out.iter().any(|&x| x == usize::MAX) {
        return Err(Error::invalid("pushed map is partial"));
    }
    Ok(out)
}

/// Pairwise overlap data for a cover: pushouts `B_i ⊗_A B_j` with the legs
/// `A -> B_ij`.
pub struct CoverSquares {
    pub push: Vec<Vec<MonoidPushout>>,
    pub a_to_pair: Vec<Vec<Leg>>,
}

pub fn cover_squares(cover: &Cover) -> Result<CoverSquares> {
    let k = cover.legs.len();
    let mut push = Vec::new();
    let mut a_to_pair = Vec::new();
    for i in 0..k {
        let mut row = Vec::new();
        let mut row_a = Vec::new();
        for j in 0..k {
            let p = tensor_monoids(&cover.legs[i], &cover.legs[j])?;
            let a = Leg::compose(&p.from_left, &cover.legs[i])?;
            row.push(p);
            row_a.push(a);
        }
        push.push(row);
        a_to_pair.push(row_a);
    }
    Ok(CoverSquares { push, a_to_pair })
}

/// A descent datum: a module on each leg with gluing isomorphisms over
/// every pairwise tensor, subject to the cocycle condition on triples.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    pub modules: Vec<FiniteASet>,
    /// `phis[(i,j)]`: iso `x_i ⊗ B_ij -> x_j ⊗ B_ij` on tensor classes.
    pub phis: BTreeMap<(usize, usize), Vec<usize>>,
}

/// The tensors `x_i ⊗ B_ij` for a fixed family of leg modules.
struct PairTensors {
    /// `left[i][j]` = x_i ⊗ B_ij along the left leg.
    left: Vec<Vec<Tensor>>,
    /// `right[i][j]` = x_j ⊗ B_ij along the right leg.
    right: Vec<Vec<Tensor>>,
}

fn pair_tensors(modules: &[FiniteASet], squares: &CoverSquares) -> Result<PairTensors> {
    let k = modules.len();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..k {
        let mut row_l = Vec::new();
        let mut row_r = Vec::new();
        for j in 0..k {
            row_l.push(tensor_aset(&modules[i], &squares.push[i][j].from_left)?);
            row_r.push(tensor_aset(&modules[j], &squares.push[i][j].from_right)?);
        }
        left.push(row_l);
        right.push(row_r);
    }
    Ok(PairTensors { left, right })
}

/// Cocycle check for a candidate datum over all triples (i, j, k).
fn cocycle_holds(
    cover: &Cover,
    squares: &CoverSquares,
    datum: &DescentDatum,
    pt: &PairTensors,
) -> Result<bool> {
    let k = cover.legs.len();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                // Triple object T = B_ij ⊗_A B_l.
                let triple = tensor_monoids(&squares.a_to_pair[i][j], &cover.legs[l])?;
                let t = &triple.object;
                let q = &triple.from_left; // B_ij -> T
                let r = &triple.from_right; // B_l -> T
                // Legs B_i -> T, B_j -> T, B_l -> T.
                let bi_to_t = Leg::compose(q, &squares.push[i][j].from_left)?;
                let bj_to_t = Leg::compose(q, &squares.push[i][j].from_right)?;
                // Pair-to-triple maps for (i,l) and (j,l).
                let m_il = pair_to_triple(&squares.push[i][l], &bi_to_t, r, t)?;
                let m_jl = pair_to_triple(&squares.push[j][l], &bj_to_t, r, t)?;

                let xi_t = tensor_aset(&datum.modules[i], &bi_to_t)?;
                let xj_t = tensor_aset(&datum.modules[j], &bj_to_t)?;
                let xl_t = tensor_aset(&datum.modules[l], r)?;

                // phi_ij pushed along q.
                let f_ij = push_tensor_map(
                    &datum.phis[&(i, j)],
                    &pt.left[i][j],
                    &pt.right[i][j],
                    q,
                    &xi_t,
                    &xj_t,
                )?;
                // phi_jl pushed along m_jl.
                let f_jl = push_tensor_map(
                    &datum.phis[&(j, l)],
                    &pt.left[j][l],
                    &pt.right[j][l],
                    &m_jl,
                    &xj_t,
                    &xl_t,
                )?;
                // phi_il pushed along m_il.
                let f_il = push_tensor_map(
                    &datum.phis[&(i, l)],
                    &pt.left[i][l],
                    &pt.right[i][l],
                    &m_il,
                    &xi_t,
                    &xl_t,
                )?;
                let composed: Vec<usize> = f_ij.iter().map(|&x| f_jl[x]).collect();
                if composed != f_il {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The canonical map `B_ik -> T` induced on pushout classes by the legs
/// `B_i -> T` and `B_k -> T`.
fn pair_to_triple(
    pair: &MonoidPushout,
    bi_to_t: &Leg,
    bk_to_t: &Leg,
    t: &FiniteMonoid,
) -> Result<Leg> {
    let nb = bi_to_t.source.size();
    let nc = bk_to_t.source.size();
    let mut map = vec![usize::MAX; pair.object.size()];
    for b in 0..nb {
        for c in 0..nc {
            let cls = pair.class[b][c];
            let val = t.op(bi_to_t.map[b], bk_to_t.map[c]);
            if map[cls] == usize::MAX {
                map[cls] = val;
            } else if map[cls] != val {
                return Err(Error::invalid("pair-to-triple map is not well defined"));
            }
        }
    }
    Leg::new(pair.object.clone(), t.clone(), map)
}

/// Canonical descent datum of a module: `x_i = M ⊗ B_i` with the gluing
/// through `M ⊗ B_ij`.
pub fn canonical_datum(
    cover: &Cover,
    squares: &CoverSquares,
    m: &FiniteASet,
) -> Result<(Vec<Tensor>, DescentDatum)> {
    let k = cover.legs.len();
    let leg_tensors: Vec<Tensor> = cover
        .legs
        .iter()
        .map(|leg| tensor_aset(m, leg))
        .collect::<Result<_>>()?;
    let modules: Vec<FiniteASet> = leg_tensors.iter().map(|t| t.result.clone()).collect();
    let pt = pair_tensors(&modules, squares)?;
    let mut phis = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            let m_ij = tensor_aset(m, &squares.a_to_pair[i][j])?;
            // chi: x_i ⊗ B_ij -> M ⊗ B_ij.
            let xi_ij = &pt.left[i][j];
            let mut chi = vec![usize::MAX; xi_ij.result.carrier];
            for (mm, row) in leg_tensors[i].class.iter().enumerate() {
                for b in 0..cover.legs[i].target.size() {
                    let xi_elt = row[b];
                    for d in 0..squares.push[i][j].object.size() {
                        let slot = xi_ij.class[xi_elt][d];
                        let val = m_ij.class[mm]
                            [squares.push[i][j].object.op(squares.push[i][j].from_left.map[b], d)];
                        if chi[slot] == usize::MAX {
                            chi[slot] = val;
                        } else if chi[slot] != val {
                            return Err(Error::invalid("canonical gluing is not well defined"));
                        }
                    }
                }
            }
            // psi: M ⊗ B_ij -> x_j ⊗ B_ij.
            let xj_ij = &pt.right[i][j];
            let mut psi = vec![usize::MAX; m_ij.result.carrier];
            for mm in 0..m.carrier {
                let xj_elt = leg_tensors[j].unit_class(mm);
                for d in 0..squares.push[i][j].object.size() {
                    let slot = m_ij.class[mm][d];
                    let val = xj_ij.class[xj_elt][d];
                    if psi[slot] == usize::MAX {
                        psi[slot] = val;
                    } else if psi[slot] != val {
                        return Err(Error::invalid("canonical gluing is not well defined"));
                    }
                }
            }
            let phi: Vec<usize> = chi.iter().map(|&x| psi[x]).collect();
            phis.insert((i, j), phi);
        }
    }
    Ok((leg_tensors, DescentDatum { modules, phis }))
}

/// The descended module of a datum: the equalizer inside the product of the
/// leg modules, with the restricted action.
pub fn descend(cover: &Cover, squares: &CoverSquares, datum: &DescentDatum) -> Result<FiniteASet> {
    let k = cover.legs.len();
    let pt = pair_tensors(&datum.modules, squares)?;
    let sizes: Vec<usize> = datum.modules.iter().map(|x| x.carrier).collect();
    let mut tuple = vec![0usize; k];
    let mut members: Vec<Vec<usize>> = Vec::new();
    if sizes.iter().any(|&s| s == 0) {
        return FiniteASet::new(cover.base.clone(), 0, vec![vec![]; cover.base.size()]);
    }
    loop {
        let ok = (0..k).all(|i| {
            (0..k).all(|j| {
                let phi = &datum.phis[&(i, j)];
                let left = pt.left[i][j].unit_class(tuple[i]);
                let right = pt.right[i][j].unit_class(tuple[j]);
                phi[left] == right
            })
        });
        if ok {
            members.push(tuple.clone());
        }
        let mut slot = k;
        let mut done = true;
        while slot > 0 {
            slot -= 1;
            tuple[slot] += 1;
            if tuple[slot] < sizes[slot] {
                done = false;
                break;
            }
            tuple[slot] = 0;
        }
        if done {
            break;
        }
    }
    let index_of: BTreeMap<Vec<usize>, usize> =
        members.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut action = vec![vec![0usize; members.len()]; cover.base.size()];
    for (mi, member) in members.iter().enumerate() {
        for a in 0..cover.base.size() {
            let moved: Vec<usize> = (0..k)
                .map(|i| datum.modules[i].act(cover.legs[i].map[a], member[i]))
                .collect();
            let target = index_of
                .get(&moved)
                .ok_or_else(|| Error::invalid("descended module is not closed under the action"))?;
            action[a][mi] = *target;
        }
    }
    FiniteASet::new(cover.base.clone(), members.len(), action)
}

/// Morphisms of descent data `(x_i, phi) -> (y_i, psi)`: families of
/// equivariant maps commuting with the gluing.
fn descent_morphisms(
    cover: &Cover,
    squares: &CoverSquares,
    x: &DescentDatum,
    y: &DescentDatum,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let k = cover.legs.len();
    let x_pt = pair_tensors(&x.modules, squares)?;
    let y_pt = pair_tensors(&y.modules, squares)?;
    let per_leg: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|i| aset_maps(&x.modules[i], &y.modules[i]))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    if per_leg.iter().any(|m| m.is_empty()) {
        return Ok(out);
    }
    loop {
        let family: Vec<&Vec<usize>> = (0..k).map(|i| &per_leg[i][choice[i]]).collect();
        let mut ok = true;
        'outer: for i in 0..k {
            for j in 0..k {
                // psi_ij o (h_i ⊗ id) == (h_j ⊗ id) o phi_ij.
                let hi_t = tensor_map(family[i], &x_pt.left[i][j], &y_pt.left[i][j]);
                let hj_t = tensor_map(family[j], &x_pt.right[i][j], &y_pt.right[i][j]);
                let lhs: Vec<usize> = hi_t.iter().map(|&v| y.phis[&(i, j)][v]).collect();
                let rhs: Vec<usize> = x.phis[&(i, j)].iter().map(|&v| hj_t[v]).collect();
                if lhs != rhs {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            out.push(family.into_iter().cloned().collect());
        }
        let mut slot = k;
        let mut done = true;
        while slot > 0 {
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < per_leg[slot].len() {
                done = false;
                break;
            }
            choice[slot] = 0;
        }
        if done {
            break;
        }
    }
    Ok(out)
}

/// Isomorphism of descent data: a morphism whose components are bijective.
fn data_isomorphic(
    cover: &Cover,
    squares: &CoverSquares,
    x: &DescentDatum,
    y: &DescentDatum,
) -> Result<bool> {
    if (0..cover.legs.len()).any(|i| x.modules[i].carrier != y.modules[i].carrier) {
        return Ok(false);
    }
    let morphisms = descent_morphisms(cover, squares, x, y)?;
    Ok(morphisms.iter().any(|family| {
        family
            .iter()
            .enumerate()
            .all(|(i, h)| is_bijective(h, y.modules[i].carrier))
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub pairs_checked: usize,
    pub fully_faithful: bool,
    pub data_enumerated: usize,
    pub essentially_surjective: bool,
    pub failure: Option<String>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.fully_faithful && self.essentially_surjective
    }
}

/// The descent equivalence on bounded instances: the comparison functor
/// from modules to descent data is fully faithful and hits every datum with
/// carriers up to the bound.
pub fn descent_equivalence_check(
    cover: &Cover,
    bound: usize,
    budget: &Budget,
) -> Result<EquivalenceReport> {
    let squares = cover_squares(cover)?;
    let k = cover.legs.len();
    let a_sets = enumerate_asets(&cover.base, bound, true);

    // Fully faithful: Hom_A(M, N) matches descent morphisms of the images.
    let mut pairs_checked = 0usize;
    for m in &a_sets {
        for n in &a_sets {
            pairs_checked += 1;
            budget.check("descent hom comparison", pairs_checked as u64)?;
            let hom_count = aset_maps(m, n).len();
            let (m_tensors, fm) = canonical_datum(cover, &squares, m)?;
            let (_, fn_) = canonical_datum(cover, &squares, n)?;
            let morphisms = descent_morphisms(cover, &squares, &fm, &fn_)?;
            if morphisms.len() != hom_count {
                return Ok(EquivalenceReport {
                    pairs_checked,
                    fully_faithful: false,
                    data_enumerated: 0,
                    essentially_surjective: false,
                    failure: Some(format!(
                        "hom sets disagree on modules of carriers {} and {}: {} maps vs {} descent morphisms",
                        m.carrier,
                        n.carrier,
                        hom_count,
                        morphisms.len()
                    )),
                });
            }
            // Injectivity of the comparison on homs.
            let mut images: Vec<Vec<Vec<usize>>> = Vec::new();
            let n_tensors: Vec<Tensor> = cover
                .legs
                .iter()
                .map(|leg| tensor_aset(n, leg))
                .collect::<Result<_>>()?;
            for u in aset_maps(m, n) {
                let fam: Vec<Vec<usize>> = (0..k)
                    .map(|i| tensor_map(&u, &m_tensors[i], &n_tensors[i]))
                    .collect();
                images.push(fam);
            }
            let mut dedup = images.clone();
            dedup.sort();
            dedup.dedup();
            if dedup.len() != images.len() {
                return Ok(EquivalenceReport {
                    pairs_checked,
                    fully_faithful: false,
                    data_enumerated: 0,
                    essentially_surjective: false,
                    failure: Some("comparison functor is not faithful".into()),
                });
            }
        }
    }

    // Essential surjectivity: every cocycle-coherent datum descends to a
    // module whose canonical datum is isomorphic to it.
    let leg_sets: Vec<Vec<FiniteASet>> = cover
        .legs
        .iter()
        .map(|leg| enumerate_asets(&leg.target, bound, true))
        .collect();
    let mut data_enumerated = 0usize;
    let mut choice = vec![0usize; k];
    if leg_sets.iter().all(|s| !s.is_empty()) {
        loop {
            let modules: Vec<FiniteASet> =
                (0..k).map(|i| leg_sets[i][choice[i]].clone()).collect();
            let pt = pair_tensors(&modules, &squares)?;
            // Enumerate iso families phi_ij, then cocycle-filter.
            let mut phi_candidates: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
            let mut feasible = true;
            for i in 0..k {
                for j in 0..k {
                    let isos: Vec<Vec<usize>> = maps_from_tensor(&pt.left[i][j], &pt.right[i][j].result)
                        .into_iter()
                        .filter(|f| is_bijective(f, pt.right[i][j].result.carrier))
                        .collect();
                    if isos.is_empty() {
                        feasible = false;
                    }
                    phi_candidates.insert((i, j), isos);
                }
            }
            if feasible {
                let keys: Vec<(usize, usize)> = phi_candidates.keys().copied().collect();
                let limits: Vec<usize> = keys.iter().map(|k2| phi_candidates[k2].len()).collect();
                let mut pick = vec![0usize; keys.len()];
                loop {
                    let phis: BTreeMap<(usize, usize), Vec<usize>> = keys
                        .iter()
                        .enumerate()
                        .map(|(t, key)| (*key, phi_candidates[key][pick[t]].clone()))
                        .collect();
                    let datum = DescentDatum { modules: modules.clone(), phis };
                    if cocycle_holds(cover, &squares, &datum, &pt)? {
                        data_enumerated += 1;
                        budget.check("descent data enumeration", data_enumerated as u64)?;
                        let descended = descend(cover, &squares, &datum)?;
                        let (_, canonical) = canonical_datum(cover, &squares, &descended)?;
                        if !data_isomorphic(cover, &squares, &canonical, &datum)? {
                            return Ok(EquivalenceReport {
                                pairs_checked,
                                fully_faithful: true,
                                data_enumerated,
                                essentially_surjective: false,
                                failure: Some(format!(
                                    "datum with module carriers {:?} is not in the image",
                                    datum.modules.iter().map(|x| x.carrier).collect::<Vec<_>>()
                                )),
                            });
                        }
                    }
                    let mut slot = keys.len();
                    let mut done = true;
                    while slot > 0 {
                        slot -= 1;
                        pick[slot] += 1;
                        if pick[slot] < limits[slot] {
                            done = false;
                            break;
                        }
                        pick[slot] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
            let mut slot = k;
            let mut done = true;
            while slot > 0 {
                slot -= 1;
                choice[slot] += 1;
                if choice[slot] < leg_sets[slot].len() {
                    done = false;
                    break;
                }
                choice[slot] = 0;
            }
            if done {
                break;
            }
        }
    }

    Ok(EquivalenceReport {
        pairs_checked,
        fully_faithful: true,
        data_enumerated,
        essentially_surjective: true,
        failure: None,
    })
}

// ---------------------------------------------------------------------------
// Cover discovery and closure properties

/// A verified faithfully flat cover with its audit trail.
#[derive(Clone, Debug)]
pub struct VerifiedCover {
    pub cover: Cover,
    pub flat: Vec<BoundedVerdict>,
    pub conservative: BoundedVerdict,
    pub split: bool,
}

/// Search all covers with up to two legs among the catalogued finite
/// monoids of size at most `max_size`, keeping the faithfully flat ones.
///
/// Two-leg covers are reported only when neither leg is conservative alone;
/// one-leg refinements already cover the rest.
pub fn discover_faithfully_flat_covers(
    max_size: usize,
    bound: usize,
    budget: &Budget,
) -> Result<Vec<VerifiedCover>> {
    let catalogue: Vec<FiniteMonoid> = (1..=max_size)
        .flat_map(|s| enumerate_commutative_monoids(s, true))
        .collect();
    let mut out = Vec::new();
    for base in &catalogue {
        // All legs out of this base into catalogue targets.
        let mut legs: Vec<Leg> = Vec::new();
        for target in &catalogue {
            for hom in hom_enumerate(&Monoid::Finite(base.clone()), target, budget)? {
                legs.push(Leg::from_hom(&hom)?);
            }
        }
        let flat_legs: Vec<(Leg, BoundedVerdict)> = legs
            .iter()
            .filter_map(|leg| {
                is_flat_bounded(leg, bound, budget)
                    .ok()
                    .filter(|v| v.passed())
                    .map(|v| (leg.clone(), v))
            })
            .collect();
        let mut alone_conservative = vec![false; flat_legs.len()];
        for (idx, (leg, flat_v)) in flat_legs.iter().enumerate() {
            let cover = Cover::new(base.clone(), vec![leg.clone()])?;
            let cons = is_conservative_bounded(&cover, bound, budget)?;
            if cons.passed() {
                alone_conservative[idx] = true;
                let split = cover.is_split(budget)?;
                out.push(VerifiedCover {
                    cover,
                    flat: vec![flat_v.clone()],
                    conservative: cons,
                    split,
                });
            }
        }
        for i in 0..flat_legs.len() {
            for j in i + 1..flat_legs.len() {
                if alone_conservative[i] || alone_conservative[j] {
                    continue;
                }
                let cover =
                    Cover::new(base.clone(), vec![flat_legs[i].0.clone(), flat_legs[j].0.clone()])?;
                let cons = is_conservative_bounded(&cover, bound, budget)?;
                if cons.passed() {
                    let split = cover.is_split(budget)?;
                    out.push(VerifiedCover {
                        cover,
                        flat: vec![flat_legs[i].1.clone(), flat_legs[j].1.clone()],
                        conservative: cons,
                        split,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Compose a cover with refinements of each leg (pretopology closure under
/// composition).
pub fn compose_covers(outer: &Cover, inners: &[Cover]) -> Result<Cover> {
    if inners.len() != outer.legs.len() {
        return Err(Error::invalid("one refinement per leg required"));
    }
    let mut legs = Vec::new();
    for (leg, inner) in outer.legs.iter().zip(inners) {
        if inner.base != leg.target {
            return Err(Error::invalid("refinement base must match the leg target"));
        }
        for inner_leg in &inner.legs {
            legs.push(Leg::compose(inner_leg, leg)?);
        }
    }
    Cover::new(outer.base.clone(), legs)
}

/// Base change of a cover along a map out of its base (pretopology closure
/// under pullback): the legs become `C -> C ⊗_A B_i`.
pub fn base_change_cover(cover: &Cover, along: &Leg) -> Result<Cover> {
    if along.source != cover.base {
        return Err(Error::invalid("base change leg must start at the cover base"));
    }
    let mut legs = Vec::new();
    for leg in &cover.legs {
        let p = tensor_monoids(along, leg)?;
        legs.push(p.from_left);
    }
    Cover::new(along.target.clone(), legs)
}

/// Right adjoint property of descent against base change on an instance:
/// `Hom_A(Y, descend(D))` is in bijection with descent morphisms from the
/// canonical datum of `Y` to `D`.
pub fn adjunction_counts(
    cover: &Cover,
    y: &FiniteASet,
    datum: &DescentDatum,
) -> Result<(usize, usize)> {
    let squares = cover_squares(cover)?;
    let descended = descend(cover, &squares, datum)?;
    let left = aset_maps(y, &descended).len();
    let (_, fy) = canonical_datum(cover, &squares, y)?;
    let right = descent_morphisms(cover, &squares, &fy, datum)?.len();
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    fn absorbing() -> FiniteMonoid {
        FiniteMonoid::with_absorbing_zero()
    }

    #[test]
    fn free_module_tensors_to_free() {
        // A ⊗_A B = B as a B-module, along any leg.
        let a = absorbing();
        let b = FiniteMonoid::trivial();
        let leg = Leg::new(a.clone(), b.clone(), vec![0, 0]).unwrap();
        let t = tensor_aset(&FiniteASet::free(&a), &leg).unwrap();
        assert_eq!(t.result.carrier, 1);
        let c2 = FiniteMonoid::cyclic_group(2).unwrap();
        let id = Leg::identity(&c2);
        let t = tensor_aset(&FiniteASet::free(&c2), &id).unwrap();
        assert_eq!(t.result.carrier, 2);
    }

    #[test]
    fn tensor_along_identity_is_identity() {
        let a = absorbing();
        for m in enumerate_asets(&a, 3, false) {
            let t = tensor_aset(&m, &Leg::identity(&a)).unwrap();
            assert_eq!(t.result.carrier, m.carrier);
            assert!(asets_isomorphic(&t.result, &m));
        }
    }

    #[test]
    fn collapse_example_by_union_find() {
        // Absorbing base, module {x, y} with 0.x = x, 0.y = x, collapsed
        // along the map to the trivial monoid: a single class remains.
        let a = absorbing();
        let m = FiniteASet::new(a.clone(), 2, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let leg = Leg::new(a, FiniteMonoid::trivial(), vec![0, 0]).unwrap();
        let t = tensor_aset(&m, &leg).unwrap();
        assert_eq!(t.result.carrier, 1);
    }

    #[test]
    fn identity_leg_is_flat() {
        let a = absorbing();
        let v = is_flat_bounded(&Leg::identity(&a), 2, &budget()).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn absorbing_collapse_is_flat_but_not_conservative() {
        // Inverting the absorbing element is a localization, hence flat:
        // base change is the idempotent slice, which preserves limits.
        let a = absorbing();
        let leg = Leg::new(a, FiniteMonoid::trivial(), vec![0, 0]).unwrap();
        let v = is_flat_bounded(&leg, 3, &budget()).unwrap();
        assert!(v.passed(), "verdict {:?}", v);
    }

    #[test]
    fn free_extension_is_not_flat() {
        // triv -> Z/2 is the free functor M |-> M x Z/2; it already fails
        // to preserve the terminal module.
        let t = FiniteMonoid::trivial();
        let c2 = FiniteMonoid::cyclic_group(2).unwrap();
        let leg = Leg::new(t, c2, vec![0]).unwrap();
        let v = is_flat_bounded(&leg, 2, &budget()).unwrap();
        assert!(matches!(v, BoundedVerdict::CounterexampleFound(_)));
    }

    #[test]
    fn truncation_localization_is_flat() {
        // The finite quotient of the half-line localized at its generator:
        // {0,1,2,3} with 4 = 2, inverted to Z/2.
        let table: Vec<Vec<usize>> = (0..4)
            .map(|i| (0..4).map(|j| if i + j <= 3 { i + j } else { 2 + (i + j) % 2 }).collect())
            .collect();
        let names = (0..4).map(|i| i.to_string()).collect();
        let t = FiniteMonoid::new(names, 0, table).unwrap();
        let (loc, hom) = crate::monoid::localize(
            &Monoid::Finite(t.clone()),
            &[MonoidElement::Index(1)],
            &budget(),
        )
        .unwrap();
        let _ = loc;
        let leg = Leg::from_hom(&hom).unwrap();
        let v = is_flat_bounded(&leg, 3, &budget()).unwrap();
        assert!(v.passed(), "verdict {:?}", v);
    }

    #[test]
    fn identity_cover_is_conservative() {
        let a = absorbing();
        let v = is_conservative_bounded(&Cover::identity(&a), 2, &budget()).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn collapse_cover_is_not_conservative() {
        let a = absorbing();
        let leg = Leg::new(a.clone(), FiniteMonoid::trivial(), vec![0, 0]).unwrap();
        let cover = Cover::new(a, vec![leg]).unwrap();
        let v = is_conservative_bounded(&cover, 2, &budget()).unwrap();
        assert!(matches!(v, BoundedVerdict::CounterexampleFound(_)));
    }

    #[test]
    fn sheaf_equalizer_for_identity_cover() {
        let a = absorbing();
        let cover = Cover::identity(&a);
        for m in enumerate_asets(&a, 3, true) {
            assert!(sheaf_equalizer_check(&cover, &m, &budget()).unwrap());
        }
    }

    #[test]
    fn pushout_of_trivial_legs() {
        // B ⊗_A B for the identity cover collapses to B itself when B = A.
        let a = FiniteMonoid::cyclic_group(2).unwrap();
        let id = Leg::identity(&a);
        let p = tensor_monoids(&id, &id).unwrap();
        assert_eq!(p.object.size(), 2);
    }

    #[test]
    fn split_cover_detected() {
        let a = absorbing();
        assert!(Cover::identity(&a).is_split(&budget()).unwrap());
        let leg = Leg::new(a.clone(), FiniteMonoid::trivial(), vec![0, 0]).unwrap();
        let cover = Cover::new(a, vec![leg]).unwrap();
        // The trivial monoid has no hom back hitting the absorbing element.
        assert!(!cover.is_split(&budget()).unwrap());
    }

    #[test]
    fn identity_cover_descent_equivalence() {
        let a = absorbing();
        let cover = Cover::identity(&a);
        let report = descent_equivalence_check(&cover, 2, &budget()).unwrap();
        assert!(report.holds(), "report {:?}", report);
        assert!(report.data_enumerated > 0);
    }

    #[test]
    fn split_cover_descent_equivalence() {
        // Z/2 -> Z/2 x Z/2 along the diagonal splits via a projection.
        let c2 = FiniteMonoid::cyclic_group(2).unwrap();
        let c2c2 = FiniteMonoid::direct_product(&c2, &c2);
        let diag: Vec<usize> = (0..2).map(|i| i * 2 + i).collect();
        let leg = Leg::new(c2.clone(), c2c2, diag).unwrap();
        let cover = Cover::new(c2, vec![leg]).unwrap();
        assert!(cover.is_split(&budget()).unwrap());
        let report = descent_equivalence_check(&cover, 2, &budget()).unwrap();
        assert!(report.holds(), "report {:?}", report);
    }

    #[test]
    fn canonical_datum_satisfies_cocycle() {
        let a = absorbing();
        let cover = Cover::identity(&a);
        let squares = cover_squares(&cover).unwrap();
        for m in enumerate_asets(&a, 2, true) {
            let (_, datum) = canonical_datum(&cover, &squares, &m).unwrap();
            let pt = pair_tensors(&datum.modules, &squares).unwrap();
            assert!(cocycle_holds(&cover, &squares, &datum, &pt).unwrap());
            // Descending the canonical datum recovers the module.
            let descended = descend(&cover, &squares, &datum).unwrap();
            assert!(asets_isomorphic(&descended, &m));
        }
    }

    #[test]
    fn adjunction_counts_agree_on_instances() {
        let a = absorbing();
        let cover = Cover::identity(&a);
        let squares = cover_squares(&cover).unwrap();
        let asets = enumerate_asets(&a, 2, true);
        for m in &asets {
            let (_, datum) = canonical_datum(&cover, &squares, m).unwrap();
            for y in &asets {
                let (left, right) = adjunction_counts(&cover, y, &datum).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn pseudo_functor_composition_coherence() {
        // Tensor along a composite agrees with iterated tensor.
        let a = absorbing();
        let c2 = FiniteMonoid::cyclic_group(2).unwrap();
        let triv = FiniteMonoid::trivial();
        let f = Leg::new(a.clone(), triv.clone(), vec![0, 0]).unwrap();
        let g = Leg::new(triv, c2, vec![0]).unwrap();
        let gf = Leg::compose(&g, &f).unwrap();
        for m in enumerate_asets(&a, 3, true) {
            let direct = tensor_aset(&m, &gf).unwrap();
            let step1 = tensor_aset(&m, &f).unwrap();
            let step2 = tensor_aset(&step1.result, &g).unwrap();
            assert!(asets_isomorphic(&direct.result, &step2.result));
        }
    }

    #[test]
    fn base_change_of_cover_stays_faithfully_flat() {
        // Base change the identity cover of the absorbing monoid along its
        // localization; the result must still verify.
        let a = absorbing();
        let cover = Cover::identity(&a);
        let to_triv = Leg::new(a, FiniteMonoid::trivial(), vec![0, 0]).unwrap();
        let changed = base_change_cover(&cover, &to_triv).unwrap();
        assert!(is_conservative_bounded(&changed, 2, &budget()).unwrap().passed());
        for leg in &changed.legs {
            assert!(is_flat_bounded(leg, 2, &budget()).unwrap().passed());
        }
    }

    #[test]
    fn composition_of_covers_verifies() {
        let a = absorbing();
        let cover = Cover::identity(&a);
        let inner = Cover::identity(&a);
        let composed = compose_covers(&cover, &[inner]).unwrap();
        assert!(is_conservative_bounded(&composed, 2, &budget()).unwrap().passed());
    }

    #[test]
    fn discovery_finds_identity_covers() {
        let covers = discover_faithfully_flat_covers(2, 2, &budget()).unwrap();
        assert!(!covers.is_empty());
        // Every discovered cover is flat on each leg and jointly conservative.
        for vc in &covers {
            assert!(vc.flat.iter().all(|v| v.passed()));
            assert!(vc.conservative.passed());
        }
    }
}
