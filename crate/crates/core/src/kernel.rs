//! The sequential state-transition semantics.
//!
//! One transition of a state `[g, p]` is:
//!
//! 1. if `stop(g)` holds, the transition is undefined and the run halts;
//! 2. for every particle position `j` in ascending order, evaluate the
//!    neighborhood of `j` once on the current particle tuple and apply
//!    `interact` to `(j, k)` for each listed `k`, in list order, writing both
//!    results back before the next interaction;
//! 3. starting from `(g, ())`, evolve every particle of the post-interaction
//!    tuple in ascending order, threading the global variable and
//!    concatenating the produced particles;
//! 4. apply `evolve_global` to the resulting global variable.
//!
//! Each public function below is one level of that fold and is usable on
//! its own, which is how the intermediate tuples are checked in tests.

use alloc::vec::Vec;

use crate::tuple::{concat, IndexTuple};
use crate::Error;

/// A state: one global variable and an ordered, finite particle tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct State<P, G> {
    pub global: G,
    pub particles: Vec<P>,
}

impl<P, G> State<P, G> {
    pub fn new(global: G, particles: Vec<P>) -> Self {
        State { global, particles }
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }
}

/// Result of applying the (partial) transition function to one state.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome<P, G> {
    NextState(State<P, G>),
    /// The stopping condition held on the input state.
    Halted,
}

/// A particle method: the particle and global types plus the five functions
/// the transition is built from.
///
/// All hooks must be pure. `evolve` receives the 0-based position of the
/// particle in the post-interaction tuple; methods that do not need it
/// ignore it.
pub trait ParticleMethod {
    type Particle: Clone;
    type Global: Clone;
    /// Search structure built once at the start of each interaction phase
    /// and handed to every `neighborhood` call of that phase.
    ///
    /// A method may only use it if its `interact` never changes the data the
    /// lookup was built from, so that `neighborhood` answers exactly as it
    /// would from the current tuple. Methods without one use `()`.
    type Lookup;

    fn build_lookup(
        &self,
        state: &State<Self::Particle, Self::Global>,
    ) -> Result<Self::Lookup, Error>;

    /// Positions of the interaction partners of particle `j`, in the order
    /// the interactions are to be applied.
    fn neighborhood(
        &self,
        state: &State<Self::Particle, Self::Global>,
        lookup: &Self::Lookup,
        j: usize,
    ) -> Result<IndexTuple, Error>;

    fn stop(&self, global: &Self::Global) -> bool;

    fn interact(
        &self,
        global: &Self::Global,
        pj: &Self::Particle,
        pk: &Self::Particle,
    ) -> Result<(Self::Particle, Self::Particle), Error>;

    fn evolve(
        &self,
        global: &Self::Global,
        particle: &Self::Particle,
        j: usize,
    ) -> Result<(Self::Global, Vec<Self::Particle>), Error>;

    fn evolve_global(&self, global: &Self::Global) -> Self::Global;
}

type StateOf<M> = State<<M as ParticleMethod>::Particle, <M as ParticleMethod>::Global>;

fn check_position(position: usize, len: usize) -> Result<(), Error> {
    if position < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { position, len })
    }
}

fn interact_slots<M: ParticleMethod>(
    def: &M,
    global: &M::Global,
    particles: &mut [M::Particle],
    j: usize,
    k: usize,
) -> Result<(), Error> {
    check_position(j, particles.len())?;
    check_position(k, particles.len())?;
    if j == k {
        return Err(Error::SelfInteraction { position: j });
    }
    let (pj, pk) = def.interact(global, &particles[j], &particles[k])?;
    particles[j] = pj;
    particles[k] = pk;
    Ok(())
}

fn interact_neighbors_in<M: ParticleMethod>(
    def: &M,
    state: &mut StateOf<M>,
    lookup: &M::Lookup,
    j: usize,
) -> Result<(), Error> {
    check_position(j, state.particles.len())?;
    // One neighborhood evaluation per particle, on the tuple as it stands now.
    let neighbors = def.neighborhood(state, lookup, j)?;
    for &k in neighbors.iter() {
        interact_slots(def, &state.global, &mut state.particles, j, k)?;
    }
    Ok(())
}

fn interact_all_in<M: ParticleMethod>(def: &M, mut state: StateOf<M>) -> Result<StateOf<M>, Error> {
    let lookup = def.build_lookup(&state)?;
    for j in 0..state.particles.len() {
        interact_neighbors_in(def, &mut state, &lookup, j)?;
    }
    Ok(state)
}

/// Interaction of particles `j` and `k`: the tuple with slots `j` and `k`
/// replaced by the two results of `interact`.
pub fn interact_pair<M: ParticleMethod>(
    def: &M,
    state: &StateOf<M>,
    j: usize,
    k: usize,
) -> Result<Vec<M::Particle>, Error> {
    let mut particles = state.particles.clone();
    interact_slots(def, &state.global, &mut particles, j, k)?;
    Ok(particles)
}

/// Interaction of particle `j` with every particle of its neighborhood, in
/// neighborhood order.
pub fn interact_neighbors<M: ParticleMethod>(
    def: &M,
    state: &StateOf<M>,
    j: usize,
) -> Result<Vec<M::Particle>, Error> {
    let lookup = def.build_lookup(state)?;
    let mut work = state.clone();
    interact_neighbors_in(def, &mut work, &lookup, j)?;
    Ok(work.particles)
}

/// The whole interaction phase: [`interact_neighbors`] folded over all
/// positions in ascending order.
pub fn interact_all<M: ParticleMethod>(
    def: &M,
    state: &StateOf<M>,
) -> Result<Vec<M::Particle>, Error> {
    interact_all_in(def, state.clone()).map(|s| s.particles)
}

/// Evolution of one particle: evolves `source[j]` under `global` and appends
/// the produced particles to `acc`.
pub fn evolve_one<M: ParticleMethod>(
    def: &M,
    global: M::Global,
    source: &[M::Particle],
    acc: Vec<M::Particle>,
    j: usize,
) -> Result<(M::Global, Vec<M::Particle>), Error> {
    check_position(j, source.len())?;
    let (global, produced) = def.evolve(&global, &source[j], j)?;
    Ok((global, concat(acc, produced)))
}

/// Evolution of all particles, starting from `(state.global, ())`.
pub fn evolve_all<M: ParticleMethod>(def: &M, state: StateOf<M>) -> Result<StateOf<M>, Error> {
    let State { global, particles } = state;
    let (global, evolved) = (0..particles.len()).try_fold(
        (global, Vec::with_capacity(particles.len())),
        |(global, acc), j| evolve_one(def, global, &particles, acc, j),
    )?;
    Ok(State::new(global, evolved))
}

// Transition on a state whose stopping condition is known to be false.
fn transition<M: ParticleMethod>(def: &M, state: StateOf<M>) -> Result<StateOf<M>, Error> {
    let interacted = interact_all_in(def, state)?;
    let evolved = evolve_all(def, interacted)?;
    Ok(State::new(def.evolve_global(&evolved.global), evolved.particles))
}

/// One application of the transition function.
pub fn step<M: ParticleMethod>(
    def: &M,
    state: &StateOf<M>,
) -> Result<StepOutcome<M::Particle, M::Global>, Error> {
    if def.stop(&state.global) {
        return Ok(StepOutcome::Halted);
    }
    transition(def, state.clone()).map(StepOutcome::NextState)
}

/// Iterates [`step`] until the stopping condition holds and returns the last
/// state together with the number of transitions performed.
///
/// `max_steps` bounds the number of transitions; reaching it without halting
/// is [`Error::StepLimitExceeded`].
pub fn run<M: ParticleMethod>(
    def: &M,
    initial: StateOf<M>,
    max_steps: Option<usize>,
) -> Result<(StateOf<M>, usize), Error> {
    run_observed(def, initial, max_steps, |_, _| {})
}

/// [`run`], calling `observer(transition_index, state)` on every state of
/// the sequence, the initial one (index 0) included.
pub fn run_observed<M, F>(
    def: &M,
    initial: StateOf<M>,
    max_steps: Option<usize>,
    mut observer: F,
) -> Result<(StateOf<M>, usize), Error>
where
    M: ParticleMethod,
    F: FnMut(usize, &StateOf<M>),
{
    let mut state = initial;
    let mut transitions = 0usize;
    observer(0, &state);
    loop {
        if def.stop(&state.global) {
            return Ok((state, transitions));
        }
        if let Some(limit) = max_steps {
            if transitions >= limit {
                return Err(Error::StepLimitExceeded { limit });
            }
        }
        state = transition(def, state)?;
        transitions += 1;
        observer(transitions, &state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::index_tuple;
    use alloc::vec;

    /// Particles are integers; the global counts down to zero. Behavior of
    /// each hook is switchable so the engine levels can be probed one by one.
    #[derive(Clone, Copy, Default)]
    struct Toy {
        /// Neighborhood of j: all k > j.
        all_right: bool,
        /// Interact returns (pj + pk, pk * 10) instead of identity.
        mixing: bool,
        /// Evolve emits this many copies of the particle.
        copies: usize,
        /// Evolve increments the global's tally.
        count_in_evolve: bool,
    }

    #[derive(Clone, Debug, PartialEq)]
    struct Countdown {
        remaining: u32,
        tally: u32,
    }

    impl ParticleMethod for Toy {
        type Particle = i64;
        type Global = Countdown;
        type Lookup = ();

        fn build_lookup(&self, _: &State<i64, Countdown>) -> Result<(), Error> {
            Ok(())
        }

        fn neighborhood(&self, s: &State<i64, Countdown>, _: &(), j: usize) -> Result<IndexTuple, Error> {
            Ok(if self.all_right {
                index_tuple(s.len(), |&k| k > j)
            } else {
                IndexTuple::empty()
            })
        }

        fn stop(&self, g: &Countdown) -> bool {
            g.remaining == 0
        }

        fn interact(&self, _: &Countdown, pj: &i64, pk: &i64) -> Result<(i64, i64), Error> {
            Ok(if self.mixing { (pj + pk, pk * 10) } else { (*pj, *pk) })
        }

        fn evolve(&self, g: &Countdown, p: &i64, _: usize) -> Result<(Countdown, Vec<i64>), Error> {
            let mut g = g.clone();
            if self.count_in_evolve {
                g.tally += 1;
            }
            Ok((g, vec![*p; self.copies]))
        }

        fn evolve_global(&self, g: &Countdown) -> Countdown {
            Countdown {
                remaining: g.remaining - 1,
                tally: g.tally,
            }
        }
    }

    /// Neighborhood returns a fixed tuple for particle 0, nothing otherwise.
    struct Fixed(Vec<usize>);

    impl ParticleMethod for Fixed {
        type Particle = i64;
        type Global = ();
        type Lookup = ();

        fn build_lookup(&self, _: &State<i64, ()>) -> Result<(), Error> {
            Ok(())
        }

        fn neighborhood(&self, _: &State<i64, ()>, _: &(), j: usize) -> Result<IndexTuple, Error> {
            Ok(if j == 0 { self.0.clone().into() } else { IndexTuple::empty() })
        }

        fn stop(&self, _: &()) -> bool {
            false
        }

        // Non-commutative so the application order is visible.
        fn interact(&self, _: &(), pj: &i64, pk: &i64) -> Result<(i64, i64), Error> {
            Ok((pj * 2 + pk, pk - pj))
        }

        fn evolve(&self, _: &(), p: &i64, _: usize) -> Result<((), Vec<i64>), Error> {
            Ok(((), vec![*p]))
        }

        fn evolve_global(&self, _: &()) {}
    }

    fn countdown(n: u32) -> Countdown {
        Countdown { remaining: n, tally: 0 }
    }

    #[test]
    fn interact_pair_rejects_self_and_out_of_range() {
        let def = Toy::default();
        let s = State::new(countdown(1), vec![1, 2, 3]);
        assert_eq!(interact_pair(&def, &s, 1, 1), Err(Error::SelfInteraction { position: 1 }));
        assert_eq!(
            interact_pair(&def, &s, 0, 3),
            Err(Error::IndexOutOfRange { position: 3, len: 3 })
        );
    }

    #[test]
    fn identity_interact_leaves_particles() {
        let def = Toy { all_right: true, ..Toy::default() };
        let s = State::new(countdown(1), vec![5, -2, 9, 4]);
        assert_eq!(interact_pair(&def, &s, 0, 2).unwrap(), s.particles);
        assert_eq!(interact_all(&def, &s).unwrap(), s.particles);
    }

    #[test]
    fn interact_pair_frame_condition() {
        let def = Toy { mixing: true, ..Toy::default() };
        let s = State::new(countdown(1), vec![1, 2, 3, 4, 5]);
        let out = interact_pair(&def, &s, 3, 1).unwrap();
        assert_eq!(out, vec![1, 20, 3, 6, 5]);
    }

    #[test]
    fn neighbors_fold_in_given_order() {
        let s = State::new((), vec![1, 10, 100]);
        let both = interact_neighbors(&Fixed(vec![2, 1]), &s, 0).unwrap();
        let first = interact_pair(&Fixed(vec![]), &s, 0, 2).unwrap();
        let second = interact_pair(&Fixed(vec![]), &State::new((), first), 0, 1).unwrap();
        assert_eq!(both, second);
        // Reversed order gives a different result for this interact.
        assert_ne!(both, interact_neighbors(&Fixed(vec![1, 2]), &s, 0).unwrap());
    }

    #[test]
    fn empty_neighborhood_is_identity() {
        let s = State::new((), vec![1, 10, 100]);
        assert_eq!(interact_neighbors(&Fixed(vec![]), &s, 0).unwrap(), s.particles);
    }

    #[test]
    fn self_in_neighborhood_is_an_error() {
        let s = State::new((), vec![1, 10]);
        assert_eq!(
            interact_neighbors(&Fixed(vec![1, 0]), &s, 0),
            Err(Error::SelfInteraction { position: 0 })
        );
        assert_eq!(
            interact_neighbors(&Fixed(vec![7]), &s, 0),
            Err(Error::IndexOutOfRange { position: 7, len: 2 })
        );
    }

    #[test]
    fn interact_all_threads_results_between_particles() {
        // j=0: (0,1) -> (1+2, 20) = [3, 20, 3]; (0,2) -> (3+3, 30) = [6, 20, 30]
        // j=1: (1,2) -> (20+30, 300) = [6, 50, 300]
        let def = Toy { all_right: true, mixing: true, ..Toy::default() };
        let s = State::new(countdown(1), vec![1, 2, 3]);
        assert_eq!(interact_all(&def, &s).unwrap(), vec![6, 50, 300]);
    }

    #[test]
    fn evolve_one_creation_and_destruction() {
        let g = countdown(1);
        let destroy = Toy { copies: 0, count_in_evolve: true, ..Toy::default() };
        let (g2, acc) = evolve_one(&destroy, g.clone(), &[7, 8], vec![1, 2], 1).unwrap();
        assert_eq!(acc, vec![1, 2]);
        assert_eq!(g2.tally, 1);

        let create = Toy { copies: 4, ..Toy::default() };
        let (_, acc) = evolve_one(&create, g.clone(), &[7, 8], vec![1, 2], 0).unwrap();
        assert_eq!(acc, vec![1, 2, 7, 7, 7, 7]);

        assert_eq!(
            evolve_one(&create, g, &[7, 8], Vec::new(), 2),
            Err(Error::IndexOutOfRange { position: 2, len: 2 })
        );
    }

    #[test]
    fn evolve_all_threads_global_and_counts() {
        let def = Toy { copies: 2, count_in_evolve: true, ..Toy::default() };
        let out = evolve_all(&def, State::new(countdown(1), vec![4, 5, 6])).unwrap();
        assert_eq!(out.particles, vec![4, 4, 5, 5, 6, 6]);
        assert_eq!(out.global.tally, 3);

        let empty = evolve_all(&def, State::new(countdown(1), vec![])).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.global, countdown(1));

        let id = Toy { copies: 1, ..Toy::default() };
        let same = evolve_all(&id, State::new(countdown(1), vec![4, 5, 6])).unwrap();
        assert_eq!(same.particles, vec![4, 5, 6]);
    }

    #[test]
    fn step_halts_exactly_on_stop() {
        let def = Toy { copies: 1, ..Toy::default() };
        assert_eq!(step(&def, &State::new(countdown(0), vec![1])).unwrap(), StepOutcome::Halted);
        match step(&def, &State::new(countdown(2), vec![])).unwrap() {
            StepOutcome::NextState(s) => {
                assert!(s.is_empty());
                assert_eq!(s.global, countdown(1));
            }
            StepOutcome::Halted => panic!("should not halt"),
        }
    }

    #[test]
    fn run_counts_and_observes() {
        let def = Toy { all_right: true, mixing: true, copies: 1, ..Toy::default() };
        let mut seen = Vec::new();
        let (last, n) =
            run_observed(&def, State::new(countdown(3), vec![1, 2]), None, |i, s| {
                seen.push((i, s.global.remaining))
            })
            .unwrap();
        assert_eq!(n, 3);
        assert_eq!(last.global.remaining, 0);
        assert_eq!(seen, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
    }

    #[test]
    fn run_on_halted_initial_state() {
        let def = Toy::default();
        let init = State::new(countdown(0), vec![9]);
        let (last, n) = run(&def, init.clone(), Some(0)).unwrap();
        assert_eq!(n, 0);
        assert_eq!(last, init);
    }

    #[test]
    fn run_step_limit() {
        let def = Toy { copies: 1, ..Toy::default() };
        assert_eq!(
            run(&def, State::new(countdown(1), vec![]), Some(0)),
            Err(Error::StepLimitExceeded { limit: 0 })
        );
        assert_eq!(
            run(&def, State::new(countdown(5), vec![]), Some(4)),
            Err(Error::StepLimitExceeded { limit: 4 })
        );
        assert!(run(&def, State::new(countdown(5), vec![]), Some(5)).is_ok());
    }
}
