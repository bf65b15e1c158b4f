use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// One crossing in planar-diagram form. Labels are listed counterclockwise
/// starting from the incoming under-strand, so the under-strand runs from
/// slot 0 to slot 2. The over-strand enters at slot 3 when `positive` and at
/// slot 1 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub labels: [u32; 4],
    pub positive: bool,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.labels[0]
    }

    pub fn under_out(&self) -> u32 {
        self.labels[2]
    }

    pub fn over_in(&self) -> u32 {
        self.labels[if self.positive { 3 } else { 1 }]
    }

    pub fn over_out(&self) -> u32 {
        self.labels[if self.positive { 1 } else { 3 }]
    }

    pub fn sign(&self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

/// Oriented link diagram: crossings plus closed loops that cross nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Dir {
    In,
    Out,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }
}

fn diagram_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Diagram {
        location: location.into(),
        message: message.into(),
    }
}

/// A PD code describes a planar 4-valent graph only if face tracing with the
/// counterclockwise slot order finds `V - E + F = 1 + (graph components)`.
fn check_planar(raw: &[[u32; 4]], other: &dyn Fn(usize, usize) -> (usize, usize)) -> Result<()> {
    let n = raw.len();
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for c in 0..n {
        for s in 0..4 {
            if seen[c][s] {
                continue;
            }
            faces += 1;
            let (mut hc, mut hs) = (c, s);
            while !seen[hc][hs] {
                seen[hc][hs] = true;
                let (c2, s2) = other(hc, hs);
                hc = c2;
                hs = (s2 + 1) % 4;
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for c in 0..n {
        for s in 0..4 {
            let (c2, _) = other(c, s);
            let (a, b) = (find(&mut parent, c), find(&mut parent, c2));
            parent[a] = b;
        }
    }
    let pieces = (0..n).filter(|&c| find(&mut parent, c) == c).count();
    if faces != n + 1 + pieces {
        return Err(diagram_err(
            "diagram",
            format!(
                "not planar: {faces} faces where {} are needed for {n} crossings",
                n + 1 + pieces
            ),
        ));
    }
    Ok(())
}

/// Parses PD text: `X[a,b,c,d]` statements separated by `;`, or the literal
/// `UNKNOT`. Whitespace is ignored and lines starting with `#` are comments.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "UNKNOT" {
        return Ok(LinkDiagram::unknot());
    }
    if compact.is_empty() {
        return Err(diagram_err("input", "empty diagram; use `UNKNOT` for the unknot"));
    }
    let mut raw = Vec::new();
    for (n, stmt) in compact.split(';').enumerate() {
        if stmt.is_empty() {
            continue;
        }
        let loc = format!("statement {}", n + 1);
        let inner = stmt
            .strip_prefix("X[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| diagram_err(&loc, format!("expected `X[a,b,c,d]`, found `{stmt}`")))?;
        let labels: Vec<u32> = inner
            .split(',')
            .map(|t| {
                t.parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| diagram_err(&loc, format!("`{t}` is not a positive arc label")))
            })
            .collect::<Result<_>>()?;
        if labels.len() != 4 {
            return Err(diagram_err(&loc, format!("{} labels, expected 4", labels.len())));
        }
        raw.push([labels[0], labels[1], labels[2], labels[3]]);
    }
    LinkDiagram::from_labels(&raw)
}

impl LinkDiagram {
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            free_loops: 1,
        }
    }

    /// Unlink of `n >= 1` round circles.
    pub fn unlink(n: usize) -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            free_loops: n,
        }
    }

    /// Validates PD quadruples and orients every over-strand.
    ///
    /// Orientation flows along arcs from the under-strands, whose direction
    /// is explicit. A component that only ever passes over gets its
    /// direction from consecutive labels (`l -> l+1`).
    pub fn from_labels(raw: &[[u32; 4]]) -> Result<Self> {
        if raw.is_empty() {
            return Ok(Self::unknot());
        }
        let mut occurrences: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in raw.iter().enumerate() {
            for (s, &label) in x.iter().enumerate() {
                occurrences.entry(label).or_default().push((c, s));
            }
        }
        for (label, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(diagram_err(
                    format!("crossing {}", occ[0].0 + 1),
                    format!("arc {label} appears {} time(s), expected exactly 2", occ.len()),
                ));
            }
        }
        let other = |c: usize, s: usize| -> (usize, usize) {
            let occ = &occurrences[&raw[c][s]];
            if occ[0] == (c, s) {
                occ[1]
            } else {
                occ[0]
            }
        };

        check_planar(raw, &other)?;

        let mut dir: Vec<[Option<Dir>; 4]> =
            raw.iter().map(|_| [Some(Dir::In), None, Some(Dir::Out), None]).collect();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for c in 0..raw.len() {
            queue.push_back((c, 0));
            queue.push_back((c, 2));
        }
        loop {
            while let Some((c, s)) = queue.pop_front() {
                let d = dir[c][s].expect("queued slots are oriented");
                let (c2, s2) = other(c, s);
                let want = d.flip();
                match dir[c2][s2] {
                    Some(have) if have != want => {
                        return Err(diagram_err(
                            format!("crossing {}", c2 + 1),
                            format!("orientation of arc {} is inconsistent", raw[c2][s2]),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        dir[c2][s2] = Some(want);
                        let s3 = 4 - s2;
                        dir[c2][s3] = Some(want.flip());
                        queue.push_back((c2, s2));
                        queue.push_back((c2, s3));
                    }
                }
            }
            // over-only components
            let Some(c) = dir.iter().position(|d| d[1].is_none()) else {
                break;
            };
            let (j, l) = (raw[c][1], raw[c][3]);
            let l_to_j = j == l + 1 || (l > j + 1);
            dir[c][3] = Some(if l_to_j { Dir::In } else { Dir::Out });
            dir[c][1] = Some(if l_to_j { Dir::Out } else { Dir::In });
            queue.push_back((c, 1));
            queue.push_back((c, 3));
        }

        let crossings = raw
            .iter()
            .zip(&dir)
            .map(|(x, d)| Crossing {
                labels: *x,
                positive: d[3] == Some(Dir::In),
            })
            .collect();
        Ok(LinkDiagram {
            crossings,
            free_loops: 0,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// Arc leaving the crossing that `label` enters.
    pub(crate) fn successors(&self) -> HashMap<u32, u32> {
        let mut next = HashMap::new();
        for x in &self.crossings {
            next.insert(x.under_in(), x.under_out());
            next.insert(x.over_in(), x.over_out());
        }
        next
    }

    /// Crossing index and strand role (`true` for under) at the head of
    /// each arc.
    pub(crate) fn heads(&self) -> HashMap<u32, (usize, bool)> {
        let mut head = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            head.insert(x.under_in(), (c, true));
            head.insert(x.over_in(), (c, false));
        }
        head
    }

    /// Arc labels of each component that meets a crossing, in travel order
    /// starting from the smallest label.
    pub fn arc_components(&self) -> Vec<Vec<u32>> {
        let next = self.successors();
        let mut labels: Vec<u32> = next.keys().copied().collect();
        labels.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for start in labels {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut a = start;
            while seen.insert(a) {
                comp.push(a);
                a = next[&a];
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.arc_components().len() + self.free_loops
    }

    /// Flips over and under at crossing `c`, keeping the orientation.
    pub fn switch(&self, c: usize) -> LinkDiagram {
        let mut d = self.clone();
        let x = self.crossings[c];
        let [i, j, k, l] = x.labels;
        d.crossings[c] = Crossing {
            labels: if x.positive { [l, i, j, k] } else { [j, k, l, i] },
            positive: !x.positive,
        };
        d
    }

    /// Oriented smoothing at crossing `c`: the incoming under-strand joins
    /// the outgoing over-strand and vice versa.
    pub fn smooth(&self, c: usize) -> LinkDiagram {
        let x = self.crossings[c];
        let mut rest: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != c)
            .map(|(_, x)| *x)
            .collect();
        let mut free_loops = self.free_loops;
        let mut pairs = [(x.under_in(), x.over_out()), (x.over_in(), x.under_out())];
        for n in 0..2 {
            let (keep, gone) = pairs[n];
            if keep == gone {
                free_loops += 1;
                continue;
            }
            for y in rest.iter_mut() {
                for label in y.labels.iter_mut() {
                    if *label == gone {
                        *label = keep;
                    }
                }
            }
            for p in pairs[n + 1..].iter_mut() {
                if p.0 == gone {
                    p.0 = keep;
                }
                if p.1 == gone {
                    p.1 = keep;
                }
            }
        }
        LinkDiagram {
            crossings: rest,
            free_loops,
        }
    }

    /// Relabels arcs by order of first appearance so that diagrams differing
    /// only in label names compare equal.
    pub(crate) fn canonical_key(&self) -> (Vec<([u32; 4], bool)>, usize) {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let key = self
            .crossings
            .iter()
            .map(|x| {
                let mut labels = [0; 4];
                for (s, &l) in x.labels.iter().enumerate() {
                    let fresh = map.len() as u32 + 1;
                    labels[s] = *map.entry(l).or_insert(fresh);
                }
                (labels, x.positive)
            })
            .collect();
        (key, self.free_loops)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() && self.free_loops == 1 {
            return write!(f, "UNKNOT");
        }
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.labels;
                format!("X[{a},{b},{c},{d}]")
            })
            .collect();
        write!(f, "{}", parts.join(";"))?;
        if self.free_loops > 0 && !self.crossings.is_empty() {
            write!(f, " + {} free loop(s)", self.free_loops)?;
        } else if self.crossings.is_empty() {
            write!(f, "{} free loop(s)", self.free_loops)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]";

    #[test]
    fn trefoil_is_one_positive_component() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn strands_returning_to_their_neighbour_are_not_planar() {
        // each strand leaves a crossing toward the crossing it came from
        let e = parse_pd("X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]").unwrap_err();
        assert!(e.to_string().contains("not planar"));
    }

    #[test]
    fn unknot_literal() {
        let d = parse_pd(" UNKNOT \n").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn label_multiplicity_is_checked() {
        let e = parse_pd("X[1,4,2,3];X[3,6,4,5];X[5,2,6,7]").unwrap_err();
        assert!(matches!(e, Error::Diagram { .. }));
        assert!(e.to_string().contains("arc 1"));
    }

    #[test]
    fn inconsistent_orientation_is_rejected() {
        // arc 1 enters the under-strand twice
        assert!(parse_pd("X[1,2,2,1]").is_ok());
        assert!(parse_pd("X[1,3,2,4];X[1,4,2,3]").is_err());
    }

    #[test]
    fn non_planar_codes_are_rejected() {
        // one component passing under the other twice with linking number 1
        let e = parse_pd("X[1,4,2,3];X[2,3,1,4]").unwrap_err();
        assert!(e.to_string().contains("not planar"));
        assert!(parse_pd("X[1,3,2,4];X[3,1,4,2]").is_ok());
    }

    #[test]
    fn malformed_statements() {
        assert!(parse_pd("X[1,2,3]").is_err());
        assert!(parse_pd("Y[1,1,2,2]").is_err());
        assert!(parse_pd("X[0,0,1,1]").is_err());
        assert!(parse_pd("").is_err());
    }

    #[test]
    fn kinks_have_signs() {
        assert!(parse_pd("X[1,1,2,2]").unwrap().crossings()[0].positive);
        assert!(!parse_pd("X[2,1,1,2]").unwrap().crossings()[0].positive);
    }

    #[test]
    fn switch_flips_sign_and_back() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = d.switch(0);
        assert!(!s.crossings()[0].positive);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.switch(0).canonical_key(), d.canonical_key());
    }

    #[test]
    fn smoothing_a_kink_gives_two_loops() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let s = d.smooth(0);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn smoothing_trefoil_gives_hopf_link() {
        let s = parse_pd(TREFOIL).unwrap().smooth(0);
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.component_count(), 2);
        assert_eq!(s.writhe(), 2);
    }
}
