//! The σ-stack operator and the two-stack σ-machine.
//!
//! A σ-stack is operated greedily: the next input entry is pushed whenever
//! the content, read from top to bottom, still avoids σ afterwards; otherwise
//! the top is popped to the output. Once the input is exhausted the same pop
//! routine drains the stack.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::perm::{sequence_contains, Permutation};
use crate::search::Matcher;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", content = "value", rename_all = "lowercase")]
pub enum Event {
    Push(u8),
    Pop(u8),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Push(v) => write!(f, "push {v}"),
            Event::Pop(v) => write!(f, "pop {v}"),
        }
    }
}

/// The ordered push/pop events of one σ-stack pass.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MachineTrace {
    events: Vec<Event>,
}

impl MachineTrace {
    pub fn new(events: Vec<Event>) -> Self {
        MachineTrace { events }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Re-executes the events from an empty stack on `input` and returns the
    /// output; fails if a push is out of input order or a pop does not match
    /// the top of the stack.
    pub fn replay(&self, input: &Permutation) -> Result<Permutation> {
        let mut next = input.values().iter();
        let mut stack = Vec::new();
        let mut output = Vec::with_capacity(input.len());
        for (step, event) in self.events.iter().enumerate() {
            match *event {
                Event::Push(v) => {
                    if next.next() != Some(&v) {
                        return Err(invalid(format!("step {}: push {v} out of input order", step + 1)));
                    }
                    stack.push(v);
                }
                Event::Pop(v) => {
                    if stack.pop() != Some(v) {
                        return Err(invalid(format!("step {}: pop {v} is not the top", step + 1)));
                    }
                    output.push(v);
                }
            }
        }
        if next.next().is_some() || !stack.is_empty() {
            return Err(invalid("trace leaves input or stack non-empty"));
        }
        Permutation::new(output)
    }

    /// One event per line: `push v` / `pop v`.
    pub fn to_lines(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }

    pub fn from_lines(text: &str) -> Result<Self> {
        let events = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                let (op, value) = line.split_once(' ').ok_or_else(|| invalid(format!("bad event {line:?}")))?;
                let value: u8 = value.trim().parse().map_err(|_| invalid(format!("bad value in {line:?}")))?;
                match op {
                    "push" => Ok(Event::Push(value)),
                    "pop" => Ok(Event::Pop(value)),
                    _ => Err(invalid(format!("bad op in {line:?}"))),
                }
            })
            .collect::<Result<_>>()?;
        Ok(MachineTrace { events })
    }
}

/// A σ-stack operator, reusable across inputs.
#[derive(Debug, Clone)]
pub struct SigmaStackOperator {
    sigma: Permutation,
    // Content avoided σ before the push, so any new occurrence must start
    // with the pushed entry: searches are anchored at the top.
    push_test: Matcher,
}

impl SigmaStackOperator {
    pub fn new(sigma: &Permutation) -> Result<Self> {
        if sigma.len() < 2 {
            return Err(invalid(format!("σ-stack needs |σ| ≥ 2, got {}", sigma.len())));
        }
        Ok(SigmaStackOperator { sigma: sigma.clone(), push_test: Matcher::anchored(sigma.values()) })
    }

    /// The classical 21-stack.
    pub fn increasing() -> &'static SigmaStackOperator {
        static OP: OnceLock<SigmaStackOperator> = OnceLock::new();
        OP.get_or_init(|| SigmaStackOperator::new(&Permutation::decreasing(2)).expect("|21| = 2"))
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn start<'a>(&'a self, input: &'a Permutation) -> SigmaStack<'a> {
        SigmaStack {
            op: self,
            content: Vec::with_capacity(input.len()),
            input: input.values(),
            next: 0,
            output: Vec::with_capacity(input.len()),
            view: Vec::with_capacity(input.len() + 1),
        }
    }

    pub fn apply(&self, input: &Permutation) -> Permutation {
        let mut stack = self.start(input);
        while stack.step().is_some() {}
        Permutation::from_vec_unchecked(stack.output)
    }

    pub fn apply_traced(&self, input: &Permutation) -> (Permutation, MachineTrace) {
        let mut stack = self.start(input);
        let mut events = Vec::with_capacity(2 * input.len());
        while let Some(e) = stack.step() {
            events.push(e);
        }
        (Permutation::from_vec_unchecked(stack.output), MachineTrace { events })
    }

    /// The output avoids 231, i.e. the following 21-stack sorts it.
    pub fn sorts(&self, input: &Permutation) -> bool {
        !sequence_contains(self.apply(input).values(), &[2, 3, 1])
    }
}

/// Live state of one σ-stack pass.
pub struct SigmaStack<'a> {
    op: &'a SigmaStackOperator,
    /// Bottom to top.
    content: Vec<u8>,
    input: &'a [u8],
    next: usize,
    output: Vec<u8>,
    view: Vec<u8>,
}

impl SigmaStack<'_> {
    pub fn forbidden(&self) -> &Permutation {
        &self.op.sigma
    }

    pub fn content_top_to_bottom(&self) -> Vec<u8> {
        self.content.iter().rev().copied().collect()
    }

    pub fn remaining_input(&self) -> &[u8] {
        &self.input[self.next..]
    }

    pub fn output(&self) -> &[u8] {
        &self.output
    }

    pub fn is_done(&self) -> bool {
        self.next == self.input.len() && self.content.is_empty()
    }

    /// True iff pushing `x` now would put an occurrence of σ in the stack.
    pub fn push_blocked(&mut self, x: u8) -> bool {
        self.view.clear();
        self.view.push(x);
        self.view.extend(self.content.iter().rev());
        self.op.push_test.is_contained_in(&self.view)
    }

    /// Performs one push or pop; `None` once input and stack are both empty.
    pub fn step(&mut self) -> Option<Event> {
        if let Some(&x) = self.input.get(self.next) {
            if self.content.is_empty() || !self.push_blocked(x) {
                self.content.push(x);
                self.next += 1;
                return Some(Event::Push(x));
            }
        }
        self.pop()
    }

    fn pop(&mut self) -> Option<Event> {
        let top = self.content.pop()?;
        self.output.push(top);
        Some(Event::Pop(top))
    }
}

/// Output of the greedy σ-stack on `pi`.
pub fn map_sigma(sigma: &Permutation, pi: &Permutation) -> Result<Permutation> {
    Ok(SigmaStackOperator::new(sigma)?.apply(pi))
}

pub fn map_sigma_traced(sigma: &Permutation, pi: &Permutation) -> Result<(Permutation, MachineTrace)> {
    Ok(SigmaStackOperator::new(sigma)?.apply_traced(pi))
}

/// σ-stack followed by a 21-stack.
pub fn machine_output(sigma: &Permutation, pi: &Permutation) -> Result<Permutation> {
    let first = map_sigma(sigma, pi)?;
    Ok(SigmaStackOperator::increasing().apply(&first))
}

/// The σ-machine sorts `pi`: equivalently the σ-stack output avoids 231.
pub fn is_sortable(sigma: &Permutation, pi: &Permutation) -> Result<bool> {
    Ok(SigmaStackOperator::new(sigma)?.sorts(pi))
}
