//! Threshold slicing of an uncertain directly-follows graph.

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use super::{FreqRange, Udfg};
use crate::dfg::DfgView;
use crate::model::ActivityLabel;

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: Rational },
    #[error("{low_name} = {low} exceeds {high_name} = {high}")]
    Inverted {
        low_name: &'static str,
        low: Rational,
        high_name: &'static str,
        high: Rational,
    },
    #[error("not a number in [0, 1]: {0:?}")]
    Unparsable(String),
}

/// Four thresholds in `[0, 1]`. Boundaries are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceParams {
    act_min: Rational,
    act_max: Rational,
    rel_min: Rational,
    rel_max: Rational,
}

impl Default for SliceParams {
    /// Retains everything.
    fn default() -> Self {
        SliceParams {
            act_min: Rational::from_integer(0),
            act_max: Rational::from_integer(1),
            rel_min: Rational::from_integer(0),
            rel_max: Rational::from_integer(1),
        }
    }
}

impl SliceParams {
    pub fn new(
        act_min: Rational,
        act_max: Rational,
        rel_min: Rational,
        rel_max: Rational,
    ) -> Result<Self, SliceError> {
        let one = Rational::from_integer(1);
        for (name, value) in [
            ("act_min", act_min),
            ("act_max", act_max),
            ("rel_min", rel_min),
            ("rel_max", rel_max),
        ] {
            if value > one {
                return Err(SliceError::OutOfRange { name, value });
            }
        }
        if act_min > act_max {
            return Err(SliceError::Inverted {
                low_name: "act_min",
                low: act_min,
                high_name: "act_max",
                high: act_max,
            });
        }
        if rel_min > rel_max {
            return Err(SliceError::Inverted {
                low_name: "rel_min",
                low: rel_min,
                high_name: "rel_max",
                high: rel_max,
            });
        }
        Ok(SliceParams {
            act_min,
            act_max,
            rel_min,
            rel_max,
        })
    }

    /// Parses each threshold with [`parse_ratio`].
    pub fn parse(
        act_min: &str,
        act_max: &str,
        rel_min: &str,
        rel_max: &str,
    ) -> Result<Self, SliceError> {
        Self::new(
            parse_ratio(act_min)?,
            parse_ratio(act_max)?,
            parse_ratio(rel_min)?,
            parse_ratio(rel_max)?,
        )
    }

    pub fn act_min(&self) -> Rational {
        self.act_min
    }

    pub fn act_max(&self) -> Rational {
        self.act_max
    }

    pub fn rel_min(&self) -> Rational {
        self.rel_min
    }

    pub fn rel_max(&self) -> Rational {
        self.rel_max
    }

    fn keeps_activity(&self, r: FreqRange) -> bool {
        within(r, self.act_min, self.act_max)
    }

    fn keeps_relation(&self, r: FreqRange) -> bool {
        within(r, self.rel_min, self.rel_max)
    }
}

fn within(r: FreqRange, low: Rational, high: Rational) -> bool {
    if r.max == 0 {
        return false;
    }
    let ratio = Rational::new(r.min, r.max);
    low <= ratio && ratio <= high
}

/// Parses a decimal (`0.6`, `.25`, `1`) or a fraction (`3/5`) exactly.
pub fn parse_ratio(text: &str) -> Result<Rational, SliceError> {
    let bad = || SliceError::Unparsable(text.to_owned());
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let s = text.trim();
    let value = if let Some((p, q)) = s.split_once('/') {
        let (p, q) = (p.trim(), q.trim());
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Rational::new(p, q)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if !(digits(int) || (int.is_empty() && digits(frac))) || !(frac.is_empty() || digits(frac))
        {
            return Err(bad());
        }
        // at most 18 fractional digits keeps the denominator in u64
        if frac.len() > 18 {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        int.checked_mul(scale)
            .and_then(|i| i.checked_add(frac))
            .map(|num| Rational::new(num, scale))
            .ok_or_else(bad)?
    };
    if value > Rational::from_integer(1) {
        return Err(SliceError::OutOfRange {
            name: "value",
            value,
        });
    }
    Ok(value)
}

/// Filters the graph by the four thresholds.
///
/// An activity is kept when its `Σ#min / Σ#max` ratio lies in
/// `[act_min, act_max]`; a relation when its `Σ⇝min / Σ⇝max` ratio lies in
/// `[rel_min, rel_max]` and both endpoints are kept. Activities that had
/// relations but lost all of them are dropped as well.
///
/// Start and end activities are the annotated ones that survive. If none
/// survive, the kept activities without incoming (outgoing) relations are
/// used, and failing that every kept activity.
pub fn slice(udfg: &Udfg, params: &SliceParams) -> DfgView {
    let mut activities: BTreeSet<ActivityLabel> = udfg
        .nodes
        .iter()
        .filter(|(_, &r)| params.keeps_activity(r))
        .map(|(a, _)| a.clone())
        .collect();
    let edges: BTreeSet<(ActivityLabel, ActivityLabel)> = udfg
        .arcs
        .iter()
        .filter(|((a, b), &r)| {
            activities.contains(a) && activities.contains(b) && params.keeps_relation(r)
        })
        .map(|(k, _)| k.clone())
        .collect();
    let touched: BTreeSet<&ActivityLabel> = edges.iter().flat_map(|(a, b)| [a, b]).collect();
    let had_arcs: BTreeSet<&ActivityLabel> = udfg.arcs.keys().flat_map(|(a, b)| [a, b]).collect();
    activities.retain(|a| touched.contains(a) || !had_arcs.contains(a));

    let boundary = |annotated: &std::collections::BTreeMap<ActivityLabel, FreqRange>,
                    incoming: bool| {
        let kept: BTreeSet<ActivityLabel> = annotated
            .iter()
            .filter(|(a, r)| r.max > 0 && activities.contains(*a))
            .map(|(a, _)| a.clone())
            .collect();
        if !kept.is_empty() {
            return kept;
        }
        let open: BTreeSet<ActivityLabel> = activities
            .iter()
            .filter(|x| {
                !edges.iter().any(|(a, b)| {
                    if incoming {
                        b == *x && a != b
                    } else {
                        a == *x && a != b
                    }
                })
            })
            .cloned()
            .collect();
        if open.is_empty() {
            activities.clone()
        } else {
            open
        }
    };
    let start = boundary(&udfg.start, true);
    let end = boundary(&udfg.end, false);
    DfgView {
        activities,
        edges,
        start,
        end,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, q: u64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_ratio("0.6").unwrap(), r(3, 5));
        assert_eq!(parse_ratio(".25").unwrap(), r(1, 4));
        assert_eq!(parse_ratio("1").unwrap(), r(1, 1));
        assert_eq!(parse_ratio("1.0").unwrap(), r(1, 1));
        assert_eq!(parse_ratio("0").unwrap(), r(0, 1));
        assert_eq!(parse_ratio("4/5").unwrap(), r(4, 5));
        assert_eq!(parse_ratio(" 80/100 ").unwrap(), r(4, 5));
        for bad in ["", ".", "-0.1", "1/0", "abc", "0.5.5", "1e-1", "/3", "0.x"] {
            assert!(parse_ratio(bad).is_err(), "{bad}");
        }
        assert!(matches!(
            parse_ratio("1.5"),
            Err(SliceError::OutOfRange { .. })
        ));
        assert!(matches!(
            parse_ratio("3/2"),
            Err(SliceError::OutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_inverted_ranges() {
        assert!(matches!(
            SliceParams::parse("0.7", "0.6", "0", "1"),
            Err(SliceError::Inverted { .. })
        ));
        assert!(matches!(
            SliceParams::parse("0", "1", "1", "0"),
            Err(SliceError::Inverted { .. })
        ));
        assert!(SliceParams::parse("0.5", "0.5", "0", "1").is_ok());
        assert_eq!(
            SliceParams::parse("0", "1", "0", "1").unwrap(),
            SliceParams::default()
        );
    }

    #[test]
    fn inclusive_boundaries() {
        assert!(within(FreqRange::new(4, 5), r(4, 5), r(1, 1)));
        assert!(within(FreqRange::new(4, 5), r(0, 1), r(8, 10)));
        assert!(!within(FreqRange::new(4, 5), r(81, 100), r(1, 1)));
        assert!(!within(FreqRange::new(0, 0), r(0, 1), r(1, 1)));
    }
}
