//! Brute-force ground truth for small traces.
//!
//! A realization of an uncertain trace keeps every determinate event and any
//! subset of the indeterminate ones, orders them along a linear extension of
//! the interval order and picks one label per event. Everything here is
//! exponential and refuses inputs above a cap.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dfg::DfgView;
use crate::model::{ActivityLabel, UncertainTrace};
use crate::udfg::CandidatePair;

pub const DEFAULT_EVENT_CAP: usize = 10;
pub const DEFAULT_SELECTION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} has {required} elements, above the cap of {cap}; rerun with a cap of at least {required}")]
    CapExceeded {
        what: &'static str,
        required: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Realization {
    /// `(event id, chosen label)` in execution order.
    pub steps: Vec<(String, ActivityLabel)>,
}

impl Realization {
    pub fn labels(&self) -> Vec<&str> {
        self.steps.iter().map(|(_, a)| a.as_str()).collect()
    }
}

fn check_cap(what: &'static str, required: usize, cap: usize) -> Result<(), OracleError> {
    if required > cap {
        Err(OracleError::CapExceeded {
            what,
            required,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Calls `visit` once per (event subset, linear extension), with the events
/// as indices into `trace.events`.
fn for_each_ordering(trace: &UncertainTrace, mut visit: impl FnMut(&[usize])) {
    let events = &trace.events;
    let n = events.len();
    let optional: Vec<usize> = (0..n).filter(|&i| !events[i].determinate).collect();
    let before = |v: usize, w: usize| events[v].t_max < events[w].t_min;

    fn extend(
        chosen: &[usize],
        placed: &mut Vec<bool>,
        order: &mut Vec<usize>,
        before: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if order.len() == chosen.len() {
            visit(order);
            return;
        }
        for (k, &v) in chosen.iter().enumerate() {
            if placed[k] {
                continue;
            }
            let ready = chosen
                .iter()
                .enumerate()
                .all(|(j, &u)| placed[j] || !before(u, v));
            if !ready {
                continue;
            }
            placed[k] = true;
            order.push(v);
            extend(chosen, placed, order, before, visit);
            order.pop();
            placed[k] = false;
        }
    }

    for mask in 0u64..(1u64 << optional.len()) {
        let chosen: Vec<usize> = (0..n)
            .filter(|&i| {
                events[i].determinate || {
                    let bit = optional
                        .iter()
                        .position(|&o| o == i)
                        .expect("optional event");
                    mask & (1 << bit) != 0
                }
            })
            .collect();
        let mut placed = vec![false; chosen.len()];
        let mut order = Vec::with_capacity(chosen.len());
        extend(&chosen, &mut placed, &mut order, &before, &mut visit);
    }
}

/// Every realization of `trace`, each exactly once.
pub fn enumerate_realizations(
    trace: &UncertainTrace,
    cap: usize,
) -> Result<Vec<Realization>, OracleError> {
    check_cap("trace", trace.len(), cap)?;
    let mut out = Vec::new();
    for_each_ordering(trace, |order| {
        let choices: Vec<Vec<&ActivityLabel>> = order
            .iter()
            .map(|&i| trace.events[i].activities.iter().collect())
            .collect();
        let mut pick = vec![0usize; order.len()];
        loop {
            let steps = order
                .iter()
                .zip(&pick)
                .enumerate()
                .map(|(k, (&i, &c))| (trace.events[i].id.clone(), choices[k][c].clone()))
                .collect();
            out.push(Realization { steps });
            // odometer over the label choices
            let mut k = pick.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    });
    Ok(out)
}

/// Number of adjacent positions labelled `(a, b)`.
pub fn classic_df_count<S: AsRef<str>>(sequence: &[S], a: &str, b: &str) -> u64 {
    sequence
        .windows(2)
        .filter(|w| w[0].as_ref() == a && w[1].as_ref() == b)
        .count() as u64
}

/// Minimum and maximum number of occurrences of `a` over all realizations.
pub fn activity_bounds(
    trace: &UncertainTrace,
    a: &ActivityLabel,
    cap: usize,
) -> Result<(u64, u64), OracleError> {
    check_cap("trace", trace.len(), cap)?;
    let (mut lo, mut hi) = (u64::MAX, 0);
    for_each_ordering(trace, |order| {
        let forced = order
            .iter()
            .filter(|&&i| trace.events[i].is_singleton(a))
            .count() as u64;
        let possible = order
            .iter()
            .filter(|&&i| trace.events[i].has_label(a))
            .count() as u64;
        lo = lo.min(forced);
        hi = hi.max(possible);
    });
    Ok((lo, hi))
}

/// Minimum and maximum directly-follows count of `(a, b)` over all
/// realizations. Labels are optimized per ordering by dynamic programming
/// over the label of the previous position.
pub fn relation_bounds(
    trace: &UncertainTrace,
    a: &ActivityLabel,
    b: &ActivityLabel,
    cap: usize,
) -> Result<(u64, u64), OracleError> {
    check_cap("trace", trace.len(), cap)?;
    let (mut lo, mut hi) = (u64::MAX, 0);
    for_each_ordering(trace, |order| {
        // best (min, max) count so far, keyed by the label at the last position
        let mut table: BTreeMap<&ActivityLabel, (u64, u64)> = BTreeMap::new();
        for (k, &i) in order.iter().enumerate() {
            let mut next: BTreeMap<&ActivityLabel, (u64, u64)> = BTreeMap::new();
            for label in &trace.events[i].activities {
                let entry = if k == 0 {
                    (0, 0)
                } else {
                    table
                        .iter()
                        .map(|(&prev, &(mn, mx))| {
                            let hit = u64::from(prev == a && label == b);
                            (mn + hit, mx + hit)
                        })
                        .fold((u64::MAX, 0), |(l, h), (mn, mx)| (l.min(mn), h.max(mx)))
                };
                next.insert(label, entry);
            }
            table = next;
        }
        let (mn, mx) = table
            .values()
            .fold((u64::MAX, 0), |(l, h), &(mn, mx)| (l.min(mn), h.max(mx)));
        let mn = if table.is_empty() { 0 } else { mn };
        lo = lo.min(mn);
        hi = hi.max(mx);
    });
    Ok((lo, hi))
}

/// Size of a largest subset of `cands` in which no event appears twice
/// (`same_activity == false`), or no event appears twice as a source nor
/// twice as a target (`same_activity == true`). Plain subset search.
pub fn exhaustive_selection(
    cands: &[CandidatePair],
    same_activity: bool,
    cap: usize,
) -> Result<usize, OracleError> {
    check_cap("candidate set", cands.len(), cap)?;
    let compatible = |x: &CandidatePair, y: &CandidatePair| {
        if same_activity {
            x.from != y.from && x.to != y.to
        } else {
            x.from != y.from && x.from != y.to && x.to != y.from && x.to != y.to
        }
    };
    let mut best = 0;
    for mask in 0u32..(1u32 << cands.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let picked: Vec<&CandidatePair> = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| c)
            .collect();
        let ok = picked
            .iter()
            .enumerate()
            .all(|(i, x)| picked[i + 1..].iter().all(|y| compatible(x, y)));
        if ok {
            best = size;
        }
    }
    Ok(best)
}

/// Frequencies of a log of certain traces.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassicDfg {
    pub activities: BTreeMap<ActivityLabel, u64>,
    pub relations: BTreeMap<(ActivityLabel, ActivityLabel), u64>,
    pub start: BTreeMap<ActivityLabel, u64>,
    pub end: BTreeMap<ActivityLabel, u64>,
}

impl ClassicDfg {
    pub fn to_view(&self) -> DfgView {
        DfgView {
            activities: self.activities.keys().cloned().collect(),
            edges: self.relations.keys().cloned().collect(),
            start: self.start.keys().cloned().collect(),
            end: self.end.keys().cloned().collect(),
        }
    }
}

pub fn classic_dfg<S: AsRef<str>>(sequences: &[Vec<S>]) -> ClassicDfg {
    let mut dfg = ClassicDfg::default();
    let label = |s: &S| ActivityLabel::new(s.as_ref());
    for seq in sequences {
        for s in seq {
            *dfg.activities.entry(label(s)).or_default() += 1;
        }
        for w in seq.windows(2) {
            *dfg.relations
                .entry((label(&w[0]), label(&w[1])))
                .or_default() += 1;
        }
        if let (Some(first), Some(last)) = (seq.first(), seq.last()) {
            *dfg.start.entry(label(first)).or_default() += 1;
            *dfg.end.entry(label(last)).or_default() += 1;
        }
    }
    dfg
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::io::parse_compact;

    fn trace(s: &str) -> UncertainTrace {
        parse_compact(s, "t").unwrap()
    }

    fn l(s: &str) -> ActivityLabel {
        ActivityLabel::new(s)
    }

    #[test]
    fn tiny_enumerations() {
        let r = enumerate_realizations(&trace("<a>"), DEFAULT_EVENT_CAP).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].steps, [("e1".to_owned(), l("a"))]);
        let r = enumerate_realizations(&trace("<?a>"), DEFAULT_EVENT_CAP).unwrap();
        let labels: HashSet<Vec<&str>> = r.iter().map(Realization::labels).collect();
        assert_eq!(labels, HashSet::from([vec![], vec!["a"]]));
    }

    #[test]
    fn table1_realizations() {
        let t = trace("<[{a,c},{a,d}],?{a,b},[{a,b},{b,c}],b>");
        let r = enumerate_realizations(&t, DEFAULT_EVENT_CAP).unwrap();
        assert_eq!(r.len(), 192);
        assert_eq!(r.iter().collect::<HashSet<_>>().len(), 192);
        let labels: HashSet<Vec<&str>> = r.iter().map(Realization::labels).collect();
        for expected in [
            vec!["a", "d", "b", "a", "c", "b"],
            vec!["a", "a", "a", "a", "b", "b"],
            vec!["c", "a", "c", "b", "b"],
        ] {
            assert!(labels.contains(&expected), "{expected:?}");
        }
        assert_eq!(activity_bounds(&t, &l("a"), 10).unwrap(), (0, 4));
        assert_eq!(activity_bounds(&t, &l("b"), 10).unwrap(), (1, 4));
        assert_eq!(relation_bounds(&t, &l("a"), &l("b"), 10).unwrap().1, 2);
        let brute = r
            .iter()
            .map(|x| classic_df_count(&x.labels(), "a", "b"))
            .max()
            .unwrap();
        assert_eq!(brute, 2);
    }

    #[test]
    fn cap_is_enforced() {
        let t = trace("<a,b,c>");
        assert_eq!(
            enumerate_realizations(&t, 2),
            Err(OracleError::CapExceeded {
                what: "trace",
                required: 3,
                cap: 2
            })
        );
    }

    #[test]
    fn df_counts() {
        assert_eq!(classic_df_count(&["a", "a", "a"], "a", "a"), 2);
        assert_eq!(
            classic_df_count(&["a", "d", "b", "a", "c", "b"], "a", "b"),
            0
        );
        assert_eq!(
            classic_df_count(&["d", "a", "b", "c", "a", "b"], "a", "b"),
            2
        );
        assert_eq!(classic_df_count::<&str>(&[], "a", "b"), 0);
        assert_eq!(
            relation_bounds(&trace("<a,b>"), &l("a"), &l("b"), 10).unwrap(),
            (1, 1)
        );
    }

    #[test]
    fn selection() {
        let c = [CandidatePair::new(1, 3), CandidatePair::new(3, 4)];
        assert_eq!(exhaustive_selection(&c, true, 20).unwrap(), 2);
        assert_eq!(exhaustive_selection(&c, false, 20).unwrap(), 1);
        assert_eq!(exhaustive_selection(&[], false, 20).unwrap(), 0);
    }

    #[test]
    fn classic_counts() {
        let dfg = classic_dfg(&[vec!["a", "b"], vec!["a", "a", "a"]]);
        assert_eq!(dfg.activities[&l("a")], 4);
        assert_eq!(dfg.relations[&(l("a"), l("a"))], 2);
        assert_eq!(dfg.start[&l("a")], 2);
        assert_eq!(dfg.end.len(), 2);
    }
}
