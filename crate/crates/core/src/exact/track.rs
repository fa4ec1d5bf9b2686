//! Running minimum with lexicographic tie-breaking.
//!
//! Scalar costs decide clear wins directly. When two float costs lie within the
//! scalar's slack of each other the comparison is redone on exact costs, so
//! ties between different distance multisets are still broken by the
//! candidate order.

use crate::cost::{CostValue, Verdict};
use crate::exponent::PExponent;
use crate::scalar::CostScalar;

#[derive(Clone, Debug)]
struct Entry<T, C> {
    cost: T,
    cand: C,
    exact: Option<CostValue>,
}

#[derive(Clone, Debug)]
pub(crate) struct Tracker<T, C> {
    p: PExponent,
    best: Option<Entry<T, C>>,
}

impl<T: CostScalar, C: Ord> Tracker<T, C> {
    pub(crate) fn new(p: PExponent) -> Self {
        Tracker { p, best: None }
    }

    /// Offers a candidate; `distances` recomputes its distance vector on demand.
    pub(crate) fn offer<F: Fn(&C) -> Vec<usize>>(&mut self, cost: T, cand: C, distances: &F) {
        self.offer_entry(Entry { cost, cand, exact: None }, distances);
    }

    fn offer_entry<F: Fn(&C) -> Vec<usize>>(&mut self, mut new: Entry<T, C>, distances: &F) {
        let Some(cur) = self.best.as_mut() else {
            self.best = Some(new);
            return;
        };
        let take = if T::EXACT {
            new.cost < cur.cost || (new.cost == cur.cost && new.cand < cur.cand)
        } else {
            let (a, b) = (new.cost.to_f64(), cur.cost.to_f64());
            let slack = T::RELATIVE_SLACK;
            if a < b * (1.0 - slack) - slack {
                true
            } else if a > b * (1.0 + slack) + slack {
                false
            } else {
                let p = self.p;
                let ce = cur.exact.get_or_insert_with(|| CostValue::from_distances(&distances(&cur.cand), p));
                let ne = new.exact.get_or_insert_with(|| CostValue::from_distances(&distances(&new.cand), p));
                let new_le = ne.compare(ce) == Verdict::Below;
                let cur_le = ce.compare(ne) == Verdict::Below;
                match (new_le, cur_le) {
                    (true, false) => true,
                    (true, true) => new.cand < cur.cand,
                    (false, true) => false,
                    // Not separable even with exact bounds: fall back to the scalar order.
                    (false, false) => new.cost < cur.cost || (new.cost == cur.cost && new.cand < cur.cand),
                }
            }
        };
        if take {
            self.best = Some(new);
        }
    }

    pub(crate) fn merge<F: Fn(&C) -> Vec<usize>>(mut self, other: Self, distances: &F) -> Self {
        if let Some(e) = other.best {
            self.offer_entry(e, distances);
        }
        self
    }

    pub(crate) fn best_cost(&self) -> Option<&T> {
        self.best.as_ref().map(|e| &e.cost)
    }

    pub(crate) fn into_best(self) -> Option<(T, C)> {
        self.best.map(|e| (e.cost, e.cand))
    }
}
