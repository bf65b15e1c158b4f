use std::collections::{HashMap, HashSet};

use super::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Ring};

/// The ring `[a, z]` of HOMFLY polynomials.
pub fn homfly_ring() -> Ring {
    Ring::new(&["a", "z"]).expect("valid ring")
}

/// How base points and component order are chosen when looking for the
/// next crossing to resolve. Every strategy gives the same polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResolutionStrategy {
    /// Start each component at its smallest arc label, smallest first.
    MinLabel,
    /// Start each component at its largest arc label, largest first.
    MaxLabel,
    /// Start points and order from a hash of the labels.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomflyOptions {
    pub strategy: ResolutionStrategy,
    pub max_crossings: usize,
    /// Cap on skein expansions (switch plus smooth) across the recursion.
    pub max_steps: usize,
}

impl Default for HomflyOptions {
    fn default() -> Self {
        HomflyOptions {
            strategy: ResolutionStrategy::MinLabel,
            max_crossings: 12,
            max_steps: 200_000,
        }
    }
}

fn mix(seed: u64, label: u32) -> u64 {
    // splitmix64 finalizer
    let mut x = seed ^ (label as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl ResolutionStrategy {
    fn key(&self, label: u32) -> u64 {
        match *self {
            ResolutionStrategy::MinLabel => label as u64,
            ResolutionStrategy::MaxLabel => u64::MAX - label as u64,
            ResolutionStrategy::Seeded(s) => mix(s, label),
        }
    }
}

/// First crossing met from below when each component is walked from its
/// base point in strategy order; `None` means the diagram is descending and
/// therefore an unlink.
pub(crate) fn first_ascending(d: &LinkDiagram, strategy: ResolutionStrategy) -> Option<usize> {
    let next = d.successors();
    let head = d.heads();
    let mut starts: Vec<u32> = d
        .arc_components()
        .iter()
        .map(|comp| *comp.iter().min_by_key(|&&l| strategy.key(l)).expect("nonempty"))
        .collect();
    starts.sort_by_key(|&l| strategy.key(l));
    let mut visited = HashSet::new();
    for base in starts {
        let mut a = base;
        loop {
            let (c, under) = head[&a];
            if visited.insert(c) && under {
                return Some(c);
            }
            a = next[&a];
            if a == base {
                break;
            }
        }
    }
    None
}

type MemoKey = (Vec<([u32; 4], bool)>, usize);

/// Memoized skein evaluator. The memo is owned by one engine, so results
/// never depend on scheduling.
pub struct HomflyEngine {
    options: HomflyOptions,
    ring: Ring,
    memo: HashMap<MemoKey, LaurentPolynomial>,
    steps: usize,
}

impl HomflyEngine {
    pub fn new(options: HomflyOptions) -> Self {
        HomflyEngine {
            options,
            ring: homfly_ring(),
            memo: HashMap::new(),
            steps: 0,
        }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn p(&self, s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, &self.ring).expect("valid literal")
    }

    /// `delta^(c-1)` with `delta = (a - a^-1) / z`.
    fn unlink(&self, components: usize) -> LaurentPolynomial {
        let delta = self.p("a*z^-1 - a^-1*z^-1");
        delta.pow(components.saturating_sub(1) as u32)
    }

    pub fn evaluate(&mut self, d: &LinkDiagram) -> Result<LaurentPolynomial> {
        if d.crossing_count() > self.options.max_crossings {
            return Err(Error::ResourceLimit(format!(
                "diagram has {} crossings, budget is {}",
                d.crossing_count(),
                self.options.max_crossings
            )));
        }
        self.eval(d)
    }

    fn eval(&mut self, d: &LinkDiagram) -> Result<LaurentPolynomial> {
        let key = d.canonical_key();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = match first_ascending(d, self.options.strategy) {
            None => self.unlink(d.component_count()),
            Some(c) => {
                self.steps += 1;
                if self.steps > self.options.max_steps {
                    return Err(Error::ResourceLimit(format!(
                        "skein resolution needed more than {} steps",
                        self.options.max_steps
                    )));
                }
                let switched = self.eval(&d.switch(c))?;
                let smoothed = self.eval(&d.smooth(c))?;
                if d.crossings()[c].positive {
                    // a P+ - a^-1 P- = z P0  =>  P+ = a^-2 P- + a^-1 z P0
                    &(&self.p("a^-2") * &switched) + &(&self.p("a^-1*z") * &smoothed)
                } else {
                    // P- = a^2 P+ - a z P0
                    &(&self.p("a^2") * &switched) - &(&self.p("a*z") * &smoothed)
                }
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// HOMFLY polynomial in `a, z` with `a P+ - a^-1 P- = z P0` and unknot 1.
pub fn homfly(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    homfly_with(d, HomflyOptions::default())
}

pub fn homfly_with(d: &LinkDiagram, options: HomflyOptions) -> Result<LaurentPolynomial> {
    HomflyEngine::new(options).evaluate(d)
}

/// Checks `a P(d+) - a^-1 P(d-) = z P(d0)` at crossing `c`.
pub fn skein_holds_at(d: &LinkDiagram, c: usize, options: HomflyOptions) -> Result<bool> {
    let mut engine = HomflyEngine::new(options);
    let here = engine.evaluate(d)?;
    let switched = engine.evaluate(&d.switch(c))?;
    let smoothed = engine.evaluate(&d.smooth(c))?;
    let (plus, minus) = if d.crossings()[c].positive {
        (here, switched)
    } else {
        (switched, here)
    };
    let lhs = &(&engine.p("a") * &plus) - &(&engine.p("a^-1") * &minus);
    Ok(lhs == &engine.p("z") * &smoothed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homfly::parse_pd;

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, &homfly_ring()).unwrap()
    }

    #[test]
    fn unknot_and_unlinks() {
        assert_eq!(homfly(&LinkDiagram::unknot()).unwrap(), p("1"));
        assert_eq!(
            homfly(&LinkDiagram::unlink(2)).unwrap(),
            p("a*z^-1 - a^-1*z^-1")
        );
        assert_eq!(homfly(&parse_pd("X[1,1,2,2]").unwrap()).unwrap(), p("1"));
        assert_eq!(homfly(&parse_pd("X[2,1,1,2]").unwrap()).unwrap(), p("1"));
    }

    #[test]
    fn positive_hopf_link() {
        let d = parse_pd("X[1,3,2,4];X[3,1,4,2]").unwrap();
        assert_eq!(d.writhe(), 2);
        assert_eq!(
            homfly(&d).unwrap(),
            p("a^-1*z^-1 - a^-3*z^-1 + a^-1*z")
        );
    }

    #[test]
    fn right_trefoil() {
        let d = parse_pd("X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]").unwrap();
        let expected = p("2*a^-2 - a^-4 + a^-2*z^2");
        for strategy in [
            ResolutionStrategy::MinLabel,
            ResolutionStrategy::MaxLabel,
            ResolutionStrategy::Seeded(7),
            ResolutionStrategy::Seeded(99),
        ] {
            let opts = HomflyOptions {
                strategy,
                ..HomflyOptions::default()
            };
            assert_eq!(homfly_with(&d, opts).unwrap(), expected, "{strategy:?}");
        }
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let d = parse_pd("X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]").unwrap();
        assert_eq!(homfly(&d).unwrap(), p("a^2 - 1 + a^-2 - z^2"));
    }

    #[test]
    fn skein_relation_at_every_crossing() {
        let d = parse_pd("X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]").unwrap();
        for c in 0..3 {
            assert!(skein_holds_at(&d, c, HomflyOptions::default()).unwrap());
        }
    }

    #[test]
    fn crossing_budget() {
        let d = parse_pd("X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]").unwrap();
        let opts = HomflyOptions {
            max_crossings: 2,
            ..HomflyOptions::default()
        };
        assert!(matches!(homfly_with(&d, opts), Err(Error::ResourceLimit(_))));
        let opts = HomflyOptions {
            max_steps: 1,
            ..HomflyOptions::default()
        };
        assert!(matches!(homfly_with(&d, opts), Err(Error::ResourceLimit(_))));
    }
}
