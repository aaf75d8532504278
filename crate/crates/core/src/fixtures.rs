//! Small named instances used throughout the docs and tests.

use num_rational::Ratio;

use crate::interval::{build, Interval, WeightedIntervalGraph};

/// `a=[1,4], b=[3,6], c=[5,8]`: the path a-b-c.
pub fn path3() -> WeightedIntervalGraph {
    build(&[
        Interval::new(0, 1, 4),
        Interval::new(1, 3, 6),
        Interval::new(2, 5, 8),
    ])
    .unwrap()
}

/// `u=[1,8], v1=[0,2], v2=[4,5], v3=[7,9]` with ids u=0, v1=1, v2=2, v3=3.
pub fn claw4() -> WeightedIntervalGraph {
    build(&[
        Interval::new(0, 1, 8),
        Interval::new(1, 0, 2),
        Interval::new(2, 4, 5),
        Interval::new(3, 7, 9),
    ])
    .unwrap()
}

/// `u=[1,6], v=[2,3], z=[5,8]`: v nested in u and z1(u) = v.
pub fn nest3() -> WeightedIntervalGraph {
    build(&[
        Interval::new(0, 1, 6),
        Interval::new(1, 2, 3),
        Interval::new(2, 5, 8),
    ])
    .unwrap()
}

/// Two copies of [`claw4`] side by side, ids 0..4 and 4..8.
pub fn two_claws() -> WeightedIntervalGraph {
    let mut ivs = Vec::new();
    for (base, shift) in [(0, 0), (4, 20)] {
        for iv in claw4().intervals() {
            ivs.push(Interval::new(
                iv.vertex + base,
                iv.left + shift,
                iv.right + shift,
            ));
        }
    }
    build(&ivs).unwrap()
}

/// `b=[1,10]` of weight 1 and `a1=[0,2]`, `a2=[8,11]` of weight 2; ids b=0,
/// a1=1, a2=2. The a's form the independent part of a special partition.
pub fn split3() -> WeightedIntervalGraph {
    let ivs = [
        Interval::new(0, 1, 10),
        Interval::new(1, 0, 2),
        Interval::new(2, 8, 11),
    ];
    WeightedIntervalGraph::new(&ivs, vec![Ratio::from(1), Ratio::from(2), Ratio::from(2)]).unwrap()
}
