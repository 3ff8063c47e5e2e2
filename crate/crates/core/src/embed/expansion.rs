//! `(D, m)`-expansions: `D` vertices all within distance `m` of a centre.

use alloc::vec::Vec;

use super::EmbedError;
use crate::graph::{Bfs, Graph};
use crate::set::VertexSet;

/// A `(D, m)`-expansion of `center`.
///
/// Members are kept in breadth-first order from the centre inside the
/// induced subgraph on the members, so every prefix is again an expansion
/// with the same radius bound. [`Expansion::validate`] re-derives that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    center: usize,
    order: Vec<usize>,
    radius: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionDefect {
    Empty,
    CenterNotFirst,
    OutOfRange {
        vertex: usize,
    },
    Repeated {
        vertex: usize,
    },
    /// Not within `radius` of the centre inside the expansion.
    TooFar {
        vertex: usize,
    },
}

impl Expansion {
    pub fn singleton(v: usize) -> Self {
        Expansion {
            center: v,
            order: alloc::vec![v],
            radius: 0,
        }
    }

    /// Trusts `order` to be a breadth-first order from `center` (centre
    /// first) within the induced subgraph on it.
    pub fn from_bfs_order(center: usize, order: Vec<usize>, radius: usize) -> Self {
        Expansion {
            center,
            order,
            radius,
        }
    }

    /// Orders `members` by BFS from `center` in `G[members]`, checking that
    /// all are reached within `radius`.
    pub fn from_members(
        g: &Graph,
        center: usize,
        members: &VertexSet,
        radius: usize,
    ) -> Result<Self, ExpansionDefect> {
        if center >= g.n() || !members.contains(center) {
            return Err(ExpansionDefect::CenterNotFirst);
        }
        if let Some(v) = members.iter().find(|&v| v >= g.n()) {
            return Err(ExpansionDefect::OutOfRange { vertex: v });
        }
        let mut bfs = Bfs::new(g.n());
        bfs.run(g, [center], radius, |v| members.contains(v), |_| false);
        if bfs.order().len() < members.len() {
            let missed = members.iter().find(|&v| !bfs.visited(v)).unwrap_or(center);
            return Err(ExpansionDefect::TooFar { vertex: missed });
        }
        Ok(Expansion {
            center,
            order: bfs.order().to_vec(),
            radius,
        })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Members in BFS order, centre first.
    pub fn members(&self) -> &[usize] {
        &self.order
    }

    pub fn member_set(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn with_radius(mut self, radius: usize) -> Self {
        self.radius = radius;
        self
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ExpansionDefect> {
        if self.order.is_empty() {
            return Err(ExpansionDefect::Empty);
        }
        if self.order[0] != self.center {
            return Err(ExpansionDefect::CenterNotFirst);
        }
        let mut set = VertexSet::with_capacity(g.n());
        for &v in &self.order {
            if v >= g.n() {
                return Err(ExpansionDefect::OutOfRange { vertex: v });
            }
            if !set.insert(v) {
                return Err(ExpansionDefect::Repeated { vertex: v });
            }
        }
        let mut bfs = Bfs::new(g.n());
        bfs.run(
            g,
            [self.center],
            self.radius,
            |v| set.contains(v),
            |_| false,
        );
        match self.order.iter().find(|&&v| !bfs.visited(v)) {
            Some(&v) => Err(ExpansionDefect::TooFar { vertex: v }),
            None => Ok(()),
        }
    }
}

/// A `(D', m)`-expansion inside `e`: the first `D'` members in BFS order.
/// Every kept vertex keeps its BFS parent, so distances to the centre do
/// not grow.
pub fn trim_expansion(e: &Expansion, target: usize) -> Result<Expansion, EmbedError> {
    if target == 0 || target > e.size() {
        return Err(EmbedError::Precondition(alloc::format!(
            "trim target {target} outside 1..={}",
            e.size()
        )));
    }
    Ok(Expansion {
        center: e.center,
        order: e.order[..target].to_vec(),
        radius: e.radius,
    })
}

/// Largest expansion of `center` inside `allowed` (BFS in `G[allowed]`),
/// stopping at `size` members or `radius` layers.
pub fn grow_expansion(
    g: &Graph,
    center: usize,
    allowed: impl Fn(usize) -> bool,
    size: usize,
    radius: usize,
) -> Expansion {
    let mut bfs = Bfs::new(g.n());
    let mut count = 0;
    bfs.run(g, [center], radius, allowed, |_| {
        count += 1;
        count >= size
    });
    let order = bfs.order().to_vec();
    let reached = order.last().and_then(|&v| bfs.dist(v)).unwrap_or(0);
    Expansion {
        center,
        order,
        radius: reached,
    }
}
