//! Tuple calculus: left-fold composition, concatenation, subtuples and
//! index tuples.

use alloc::vec::Vec;
use core::ops::Deref;

/// Ordered particle positions returned by a neighborhood function.
///
/// Order is significant: the engine interacts with the listed particles in
/// exactly this order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub const fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// True when the positions are strictly ascending.
    pub fn is_ascending(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl Deref for IndexTuple {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for IndexTuple {
    fn from(positions: Vec<usize>) -> Self {
        IndexTuple(positions)
    }
}

impl<const N: usize> From<[usize; N]> for IndexTuple {
    fn from(positions: [usize; N]) -> Self {
        IndexTuple(positions.to_vec())
    }
}

impl FromIterator<usize> for IndexTuple {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexTuple(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a IndexTuple {
    type Item = &'a usize;
    type IntoIter = core::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Composition operator: folds `h` over `bs` from the left, starting at `a`.
///
/// `compose(h, a, [])` is `a`, and
/// `compose(h, a, [b1, b2, ..])` is `compose(h, h(a, b1), [b2, ..])`.
pub fn compose<A, B, H>(mut h: H, a: A, bs: &[B]) -> A
where
    H: FnMut(A, &B) -> A,
{
    let mut acc = a;
    for b in bs {
        acc = h(acc, b);
    }
    acc
}

/// [`compose`] for a fallible `h`; stops at the first error.
pub fn try_compose<A, B, E, H>(mut h: H, a: A, bs: &[B]) -> Result<A, E>
where
    H: FnMut(A, &B) -> Result<A, E>,
{
    let mut acc = a;
    for b in bs {
        acc = h(acc, b)?;
    }
    Ok(acc)
}

/// Concatenation `a ∘ b`.
pub fn concat<T, I>(mut a: Vec<T>, b: I) -> Vec<T>
where
    I: IntoIterator<Item = T>,
{
    a.extend(b);
    a
}

/// Elements of `a`, in order, at the positions where `pred(a, position)`
/// holds.
pub fn subtuple<T, F>(a: &[T], mut pred: F) -> Vec<T>
where
    T: Clone,
    F: FnMut(&[T], usize) -> bool,
{
    (0..a.len())
        .filter(|&j| pred(a, j))
        .map(|j| a[j].clone())
        .collect()
}

/// Strictly ascending positions in `0..n` where `pred` holds.
pub fn index_tuple<F>(n: usize, pred: F) -> IndexTuple
where
    F: FnMut(&usize) -> bool,
{
    (0..n).filter(pred).collect()
}
