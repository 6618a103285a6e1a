//! Planar-diagram codes for links in S^3.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counter-clockwise
//! starting at the incoming under edge. Components are oriented by the order
//! of their edge lists. Text form:
//!
//! ```text
//! X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] ; comp=knot:1-6
//! X[...] ... ; comp=knot:1-8 ; comp=belt1:9-12 frame=0/1
//! ```
//!
//! Component edge labels are consecutive ranges. A component whose single
//! label appears in no crossing is a free loop.

use std::fmt;
use std::str::FromStr;

use crate::curves::{CurveDiagram, Strand, Visit};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdComponent {
    pub label: String,
    /// edge labels in orientation order
    pub edges: Vec<usize>,
    /// surgery coefficient `p/q`
    pub framing: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkPD {
    pub crossings: Vec<[usize; 4]>,
    pub components: Vec<PdComponent>,
    pub signs: Vec<i8>,
}

impl LinkPD {
    /// Builds the PD of a diagram made only of closed strands. Edge labels
    /// are assigned consecutively along the strands starting from 1.
    pub fn from_curves(d: &CurveDiagram, labels: &[&str], framings: &[Option<(i64, i64)>]) -> Result<Self> {
        if d.strands.iter().any(|s| !s.closed) {
            return Err(Error::invalid("link diagrams have no open strands"));
        }
        if labels.len() != d.strands.len() {
            return Err(Error::InvalidArgument("one label per strand".into()));
        }
        let offsets = d.edge_offsets();
        // edge label of each global edge; free loops get their own label
        let mut label_of_edge = vec![0usize; d.edge_total()];
        let mut components = Vec::new();
        let mut next = 1;
        for (s, st) in d.strands.iter().enumerate() {
            let mut edges = Vec::new();
            if st.visits.is_empty() {
                edges.push(next);
                next += 1;
            } else {
                for e in 0..st.edge_count() {
                    label_of_edge[offsets[s] + e] = next;
                    edges.push(next);
                    next += 1;
                }
            }
            components.push(PdComponent {
                label: labels[s].to_string(),
                edges,
                framing: framings.get(s).copied().flatten(),
            });
        }
        let pos = d.visit_positions();
        let crossings = (0..d.crossing_count())
            .map(|c| {
                let r = d.rotation(c, &offsets, &pos);
                [0, 1, 2, 3].map(|i| label_of_edge[r[i] / 2])
            })
            .collect();
        Ok(Self { crossings, components, signs: d.signs.clone() })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, label: &str) -> Option<&PdComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Successor of every edge label along its component.
    fn successors(&self) -> std::collections::HashMap<usize, usize> {
        let mut next = std::collections::HashMap::new();
        for comp in &self.components {
            let m = comp.edges.len();
            for i in 0..m {
                next.insert(comp.edges[i], comp.edges[(i + 1) % m]);
            }
        }
        next
    }

    /// Converts back to closed strands. Visit `p` of a component sits between
    /// its edges `p` and `p+1`.
    pub fn to_curves(&self) -> Result<CurveDiagram> {
        let mut where_edge = std::collections::HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, &e) in comp.edges.iter().enumerate() {
                where_edge.insert(e, (ci, i));
            }
        }
        let mut strands: Vec<Strand> = self
            .components
            .iter()
            .map(|c| {
                let free = c.edges.len() == 1 && !self.crossings.iter().any(|x| x.contains(&c.edges[0]));
                let n = if free { 0 } else { c.edges.len() };
                Strand::closed(vec![Visit::new(usize::MAX, false); n])
            })
            .collect();
        let next = self.successors();
        for (x, cr) in self.crossings.iter().enumerate() {
            let [a, b, c, d] = *cr;
            let &(ca, ia) = where_edge.get(&a).ok_or_else(|| Error::invalid(format!("edge {a} has no component")))?;
            if next.get(&a) != Some(&c) {
                return Err(Error::invalid(format!("crossing {x}: under strand is not {a}->{c}")));
            }
            let over_from = if self.signs[x] > 0 { d } else { b };
            let over_to = if self.signs[x] > 0 { b } else { d };
            if next.get(&over_from) != Some(&over_to) {
                return Err(Error::invalid(format!("crossing {x}: over strand is not {over_from}->{over_to}")));
            }
            let &(co, io) = where_edge
                .get(&over_from)
                .ok_or_else(|| Error::invalid(format!("edge {over_from} has no component")))?;
            strands[ca].visits[ia] = Visit::new(x, false);
            strands[co].visits[io] = Visit::new(x, true);
        }
        if strands.iter().any(|s| s.visits.iter().any(|v| v.crossing == usize::MAX)) {
            return Err(Error::invalid("edge labels do not match crossings"));
        }
        CurveDiagram::new(strands, self.signs.clone())
    }

    /// Swap over and under everywhere; surgery coefficients change sign.
    pub fn mirror(&self) -> Self {
        let mut curves = self.to_curves().expect("valid PD");
        for st in &mut curves.strands {
            for v in &mut st.visits {
                v.over = !v.over;
            }
        }
        for s in &mut curves.signs {
            *s = -*s;
        }
        let labels: Vec<&str> = self.components.iter().map(|c| c.label.as_str()).collect();
        let framings: Vec<_> = self.components.iter().map(|c| c.framing.map(|(p, q)| (-p, q))).collect();
        LinkPD::from_curves(&curves, &labels, &framings).expect("closed strands")
    }

    /// PD tuples for consumers that want plain lists.
    pub fn tuples(&self) -> Vec<[usize; 4]> {
        self.crossings.clone()
    }
}

impl fmt::Display for LinkPD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> =
            self.crossings.iter().map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3])).collect();
        write!(f, "{}", xs.join(" "))?;
        for c in &self.components {
            let lo = c.edges.first().copied().unwrap_or(0);
            let hi = c.edges.last().copied().unwrap_or(0);
            write!(f, " ; comp={}:{}-{}", c.label, lo, hi)?;
            if let Some((p, q)) = c.framing {
                write!(f, " frame={p}/{q}")?;
            }
        }
        Ok(())
    }
}

fn parse_crossings(s: &str) -> Result<Vec<[usize; 4]>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let body = rest.strip_prefix("X[").ok_or_else(|| Error::syntax(format!("expected X[ at `{rest}`")))?;
        let close = body.find(']').ok_or_else(|| Error::syntax("unclosed X["))?;
        let nums: Vec<usize> = body[..close]
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::syntax(format!("bad edge label in X[{}]", &body[..close])))?;
        let arr: [usize; 4] = nums.try_into().map_err(|_| Error::syntax("crossing needs four labels"))?;
        out.push(arr);
        rest = &body[close + 1..];
    }
    Ok(out)
}

fn parse_component(s: &str) -> Result<PdComponent> {
    let mut parts = s.split_whitespace();
    let head = parts.next().ok_or_else(|| Error::syntax("empty component clause"))?;
    let body = head.strip_prefix("comp=").ok_or_else(|| Error::syntax(format!("expected comp= in `{s}`")))?;
    let (label, range) =
        body.rsplit_once(':').ok_or_else(|| Error::syntax(format!("expected label:range in `{body}`")))?;
    let (lo, hi) = range.split_once('-').ok_or_else(|| Error::syntax(format!("expected a-b range in `{range}`")))?;
    let lo: usize = lo.parse().map_err(|_| Error::syntax("bad range start"))?;
    let hi: usize = hi.parse().map_err(|_| Error::syntax("bad range end"))?;
    if hi < lo {
        return Err(Error::syntax("empty edge range"));
    }
    let mut framing = None;
    for p in parts {
        let f = p.strip_prefix("frame=").ok_or_else(|| Error::syntax(format!("unknown component option `{p}`")))?;
        let (a, b) = f.split_once('/').unwrap_or((f, "1"));
        let a: i64 = a.parse().map_err(|_| Error::syntax("bad framing numerator"))?;
        let b: i64 = b.parse().map_err(|_| Error::syntax("bad framing denominator"))?;
        framing = Some((a, b));
    }
    Ok(PdComponent { label: label.to_string(), edges: (lo..=hi).collect(), framing })
}

impl FromStr for LinkPD {
    type Err = Error;

    /// Signs are inferred from component orientation. When the over strand
    /// belongs to a two-edge component the direction is ambiguous and the
    /// crossing is read as positive.
    fn from_str(s: &str) -> Result<Self> {
        let mut clauses = s.split(';');
        let crossings = parse_crossings(clauses.next().unwrap_or(""))?;
        let components =
            clauses.map(str::trim).filter(|c| !c.is_empty()).map(parse_component).collect::<Result<Vec<_>>>()?;
        let mut pd = LinkPD { crossings, components, signs: Vec::new() };
        let next = pd.successors();
        let mut count = std::collections::HashMap::new();
        for x in &pd.crossings {
            for &e in x {
                *count.entry(e).or_insert(0) += 1;
            }
        }
        for (e, k) in &count {
            if *k != 2 {
                return Err(Error::invalid(format!("edge {e} appears {k} times")));
            }
        }
        pd.signs = pd.crossings.iter().map(|&[_, b, _, d]| if next.get(&d) == Some(&b) { 1 } else { -1 }).collect();
        pd.to_curves()?;
        Ok(pd)
    }
}
