//! Resumable comparison-driven computations.
//!
//! Every algorithm in this crate is an `async fn` that receives a [`Probe`]
//! and awaits one [`Probe::compare`] per comparison. Nothing else is
//! asynchronous: a [`Task`] is polled by hand, and each `Pending` means the
//! computation is parked on exactly one outstanding comparison request. The
//! driver answers it (from an instance, an adversary, or plain integers) and
//! polls again.
//!
//! This turns every algorithm into a state machine that can be advanced one
//! comparison at a time, which is what the round-robin scheduler and the
//! adversary games need.

use std::cell::Cell;
use std::cmp::Ordering;
use std::future::Future;
use std::pin::Pin;
use std::rc::Rc;
use std::task::{Context, Poll, Waker};

#[derive(Clone, Copy, Debug, Default)]
enum Exchange {
    #[default]
    Idle,
    Asked(usize, usize),
    Answered(Ordering),
}

/// The algorithm side of a comparison channel.
#[derive(Clone, Debug, Default)]
pub struct Probe(Rc<Cell<Exchange>>);

impl Probe {
    /// Asks the driver for the three-way comparison of elements `x` and `y`.
    pub fn compare(&self, x: usize, y: usize) -> Compare<'_> {
        Compare {
            probe: self,
            x,
            y,
            asked: false,
        }
    }
}

pub struct Compare<'p> {
    probe: &'p Probe,
    x: usize,
    y: usize,
    asked: bool,
}

impl Future for Compare<'_> {
    type Output = Ordering;

    fn poll(mut self: Pin<&mut Self>, _cx: &mut Context<'_>) -> Poll<Ordering> {
        if !self.asked {
            self.asked = true;
            self.probe.0.set(Exchange::Asked(self.x, self.y));
            return Poll::Pending;
        }
        match self.probe.0.replace(Exchange::Idle) {
            Exchange::Answered(answer) => Poll::Ready(answer),
            other => panic!("comparison resumed without an answer: {other:?}"),
        }
    }
}

pub type BoxFuture<'a, T> = Pin<Box<dyn Future<Output = T> + 'a>>;

/// What a task did when it was resumed.
#[derive(Debug, PartialEq, Eq)]
pub enum Step<T> {
    /// The task is parked on a comparison of these two elements.
    Compare(usize, usize),
    Done(T),
}

/// A comparison-driven computation that can be advanced one comparison at a time.
pub struct Task<'a, T> {
    probe: Probe,
    future: BoxFuture<'a, T>,
    pending: Option<(usize, usize)>,
}

impl<'a, T> Task<'a, T> {
    pub fn new<F, Fut>(build: F) -> Self
    where
        F: FnOnce(Probe) -> Fut,
        Fut: Future<Output = T> + 'a,
    {
        let probe = Probe::default();
        let future = Box::pin(build(probe.clone()));
        Task {
            probe,
            future,
            pending: None,
        }
    }

    /// Runs until the next comparison request or completion.
    ///
    /// Calling `resume` again before [`Task::reply`] returns the same
    /// outstanding request.
    pub fn resume(&mut self) -> Step<T> {
        if let Some((x, y)) = self.pending {
            return Step::Compare(x, y);
        }
        let mut cx = Context::from_waker(Waker::noop());
        match self.future.as_mut().poll(&mut cx) {
            Poll::Ready(value) => Step::Done(value),
            Poll::Pending => match self.probe.0.get() {
                Exchange::Asked(x, y) => {
                    self.pending = Some((x, y));
                    Step::Compare(x, y)
                }
                other => panic!("task suspended without a comparison request: {other:?}"),
            },
        }
    }

    /// Supplies the answer to the outstanding comparison.
    pub fn reply(&mut self, answer: Ordering) {
        assert!(self.pending.take().is_some(), "reply without an outstanding comparison");
        self.probe.0.set(Exchange::Answered(answer));
    }

    /// Drives the task to completion with a plain comparison function.
    pub fn run_with(mut self, mut answer: impl FnMut(usize, usize) -> Ordering) -> T {
        loop {
            match self.resume() {
                Step::Compare(x, y) => {
                    let a = answer(x, y);
                    self.reply(a);
                }
                Step::Done(value) => return value,
            }
        }
    }
}

/// Runs a computation over plain keys, returning its result and the number
/// of key comparisons it made. Used for size arithmetic that is not charged
/// to any oracle.
pub fn run_on_keys<'a, K: Ord, T>(keys: &[K], task: Task<'a, T>) -> (T, u64) {
    let mut count = 0u64;
    let out = task.run_with(|x, y| {
        count += 1;
        keys[x].cmp(&keys[y])
    });
    (out, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    async fn max_of(probe: Probe, n: usize) -> usize {
        let mut best = 0;
        for i in 1..n {
            if probe.compare(best, i).await == Ordering::Less {
                best = i;
            }
        }
        best
    }

    #[test]
    fn task_advances_one_comparison_per_resume() {
        let keys = [3, 9, 1, 7];
        let mut task = Task::new(|p| max_of(p, keys.len()));
        let mut seen = Vec::new();
        let result = loop {
            match task.resume() {
                Step::Compare(x, y) => {
                    seen.push((x, y));
                    assert_eq!(task.resume(), Step::Compare(x, y));
                    task.reply(keys[x].cmp(&keys[y]));
                }
                Step::Done(v) => break v,
            }
        };
        assert_eq!(result, 1);
        assert_eq!(seen, vec![(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn run_on_keys_counts() {
        let keys = [4, 2, 8, 6, 5];
        let (best, count) = run_on_keys(&keys, Task::new(|p| max_of(p, keys.len())));
        assert_eq!(best, 2);
        assert_eq!(count, 4);
    }

    #[test]
    #[should_panic(expected = "reply without")]
    fn reply_without_request_panics() {
        let mut task = Task::new(|p| max_of(p, 1));
        task.reply(Ordering::Less);
    }
}
