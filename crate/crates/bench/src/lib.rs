//! Seeded synthetic logs for the benchmarks.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udmine_core::{Timestamp, UncertainEvent, UncertainLog, UncertainTrace};

#[derive(Debug, Clone, Copy)]
pub struct LogShape {
    pub traces: usize,
    pub events_per_trace: usize,
    pub alphabet: usize,
    /// Probability that an event gets extra labels, a widened interval or
    /// the indeterminate flag, each drawn independently.
    pub uncertainty: f64,
}

impl Default for LogShape {
    fn default() -> Self {
        LogShape {
            traces: 1000,
            events_per_trace: 12,
            alphabet: 8,
            uncertainty: 0.2,
        }
    }
}

fn activity(i: usize) -> String {
    format!("act{i}")
}

/// Traces walk a fixed random successor table, so the log has recurring
/// structure rather than uniform noise.
pub fn synthetic_log(shape: LogShape, seed: u64) -> UncertainLog {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = shape.alphabet.max(1);
    let successors: Vec<[usize; 2]> = (0..n)
        .map(|_| [rng.random_range(0..n), rng.random_range(0..n)])
        .collect();
    let traces = (0..shape.traces)
        .map(|k| {
            let mut current = 0;
            let events = (0..shape.events_per_trace)
                .map(|i| {
                    let mut labels = vec![activity(current)];
                    if rng.random_bool(shape.uncertainty) {
                        labels.push(activity(rng.random_range(0..n)));
                    }
                    let t = 10 * i as u32;
                    let width = if rng.random_bool(shape.uncertainty) {
                        15
                    } else {
                        0
                    };
                    let event = UncertainEvent::new(
                        format!("c{k}_e{i}"),
                        labels,
                        Timestamp::from_tick(t),
                        Timestamp::from_tick(t + width),
                    );
                    current = successors[current][usize::from(rng.random_bool(0.5))];
                    if rng.random_bool(shape.uncertainty / 2.0) {
                        event.indeterminate()
                    } else {
                        event
                    }
                })
                .collect();
            UncertainTrace::new(format!("c{k}"), events)
        })
        .collect();
    UncertainLog::new(traces)
}
