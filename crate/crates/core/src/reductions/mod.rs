//! Reverse-Occam constructions: exception handling, majority-of-three, and
//! the two ways of turning a PAC learner back into an Occam algorithm.

mod exception;
mod maj3;
mod theorem2;
mod theorem3;

pub use exception::{exception_handle, exception_increment, ExceptionWrapped};
pub use maj3::{maj3_kdnf, maj3_threshold};
pub use theorem2::{solve_epsilon0, theorem2_decode, theorem2_occam, Theorem2Outcome, Theorem2Report};
pub use theorem3::{theorem3_decode, theorem3_occam, Theorem3Config, Theorem3Outcome, Theorem3Report};

use std::collections::HashMap;

use crate::coding::{encode_transcript, TranscriptForm, WitnessCode};
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example, LabeledSample};
use crate::learners::PacLearner;

/// Transcript of `lists`; set-determined learners get the shorter of the two forms.
fn witness_for<L: PacLearner>(learner: &L, lists: &[&[Example]], n: usize) -> Result<WitnessCode> {
    let seq = encode_transcript(lists, learner.alphabet(), n, TranscriptForm::Sequence)?;
    if !learner.set_determined() {
        return Ok(seq);
    }
    let set = encode_transcript(lists, learner.alphabet(), n, TranscriptForm::Set)?;
    Ok(if set.len() < seq.len() { set } else { seq })
}

/// Re-labels decoded examples and reruns the learner on them.
fn relearn<L: PacLearner>(
    learner: &L,
    examples: &[Example],
    labels: &dyn Fn(&Example) -> Option<bool>,
    n: usize,
) -> Result<L::Rep> {
    let items = examples
        .iter()
        .map(|x| {
            labels(x)
                .map(|l| (x.clone(), l))
                .ok_or_else(|| Error::Malformed(format!("no label for decoded example {x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    learner.learn(&LabeledSample::new(items)?, n)
}

/// Labels looked up from a sample.
pub fn sample_labels(sample: &LabeledSample) -> impl Fn(&Example) -> Option<bool> {
    let map: HashMap<Example, bool> = sample.label_map();
    move |x| map.get(x).copied()
}

fn bits_per_symbol<L: PacLearner>(learner: &L) -> f64 {
    let a: Alphabet = learner.alphabet();
    a.bits_per_symbol() as f64
}
