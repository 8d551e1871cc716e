use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A hereditarily finite set with its children kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HfSet(Arc<Inner>);

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    rank: u32,
    elems: Vec<HfSet>,
}

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet(Arc::new(Inner {
            rank: 0,
            elems: Vec::new(),
        }))
    }

    pub fn from_elems(elems: impl IntoIterator<Item = HfSet>) -> HfSet {
        let mut elems: Vec<HfSet> = elems.into_iter().collect();
        elems.sort();
        elems.dedup();
        Self::from_sorted(elems)
    }

    /// `elems` must already be sorted and duplicate-free.
    fn from_sorted(elems: Vec<HfSet>) -> HfSet {
        let rank = elems.last().map_or(0, |e| e.rank() + 1);
        HfSet(Arc::new(Inner { rank, elems }))
    }

    pub fn singleton(a: HfSet) -> HfSet {
        Self::from_sorted(vec![a])
    }

    pub fn pair(a: HfSet, b: HfSet) -> HfSet {
        Self::from_elems([a, b])
    }

    /// Kuratowski pair `{{a}, {a, b}}`.
    pub fn opair(a: HfSet, b: HfSet) -> HfSet {
        Self::pair(Self::singleton(a.clone()), Self::pair(a, b))
    }

    /// Inverse of [`HfSet::opair`].
    pub fn as_opair(&self) -> Option<(HfSet, HfSet)> {
        match self.elems() {
            [s] if s.card() == 1 => Some((s.elems()[0].clone(), s.elems()[0].clone())),
            [p, q] => {
                let (s, o) = if p.card() == 1 { (p, q) } else { (q, p) };
                if s.card() != 1 || o.card() != 2 {
                    return None;
                }
                let a = &s.elems()[0];
                if !o.contains(a) {
                    return None;
                }
                let b = o.elems().iter().find(|e| *e != a)?;
                Some((a.clone(), b.clone()))
            }
            _ => None,
        }
    }

    /// `n` as a von Neumann ordinal.
    pub fn ordinal(n: usize) -> HfSet {
        let mut acc = Vec::new();
        for _ in 0..n {
            let next = HfSet::from_sorted(acc.clone());
            acc.push(next);
        }
        HfSet::from_sorted(acc)
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn card(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    /// Children in canonical order.
    pub fn elems(&self) -> &[HfSet] {
        &self.0.elems
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        x.rank() < self.rank() && self.0.elems.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        self.card() <= other.card() && self.elems().iter().all(|e| other.contains(e))
    }

    pub fn union(&self) -> HfSet {
        HfSet::from_elems(self.elems().iter().flat_map(|e| e.elems().iter().cloned()))
    }

    /// Union of `self` and `other`.
    pub fn join(&self, other: &HfSet) -> HfSet {
        HfSet::from_elems(self.elems().iter().chain(other.elems()).cloned())
    }

    /// All subsets; `None` when there would be more than `2^max_bits` of them.
    pub fn power(&self, max_bits: usize) -> Option<HfSet> {
        let n = self.card();
        if n > max_bits {
            return None;
        }
        let subsets = (0u64..1 << n).map(|mask| {
            HfSet::from_sorted(
                self.elems()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e.clone())
                    .collect(),
            )
        });
        Some(HfSet::from_elems(subsets))
    }

    pub fn filter(&self, mut keep: impl FnMut(&HfSet) -> bool) -> HfSet {
        HfSet::from_sorted(self.elems().iter().filter(|e| keep(e)).cloned().collect())
    }
}

impl Ord for HfSet {
    fn cmp(&self, other: &HfSet) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.card().cmp(&other.card()))
            .then_with(|| self.elems().cmp(other.elems()))
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &HfSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elems().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every HF set of rank at most `max_rank` whose members, hereditarily, have
/// at most `max_card` elements. Canonical order, no repeats.
pub fn enumerate_hf(max_rank: u32, max_card: usize) -> Vec<HfSet> {
    let mut level = vec![HfSet::empty()];
    for _ in 0..max_rank {
        let mut next = Vec::new();
        subsets_up_to(&level, max_card, 0, &mut Vec::new(), &mut next);
        next.sort();
        level = next;
    }
    level
}

fn subsets_up_to(pool: &[HfSet], max: usize, from: usize, cur: &mut Vec<HfSet>, out: &mut Vec<HfSet>) {
    out.push(HfSet::from_sorted(cur.clone()));
    if cur.len() == max {
        return;
    }
    for i in from..pool.len() {
        cur.push(pool[i].clone());
        subsets_up_to(pool, max, i + 1, cur, out);
        cur.pop();
    }
}
