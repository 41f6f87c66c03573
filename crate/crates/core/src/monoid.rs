//! The graph monoid: generators `a_v` for vertices, relations `a_v = Σ_{r(e)=v} a_{d(e)}` at
//! every receiving vertex, and a bounded search deciding whether its nonzero part is a group.
//!
//! Equality in a finitely presented commutative monoid is only semi-decided here. Rewrites
//! replace one copy of `a_v` by its relation image or the reverse, and searches never leave
//! elements of total degree at most the given bound.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::MonoidError;
use crate::lp::{self, Feasibility, Row, RowKind};
use crate::model::{Graph, VertexId};

/// A finitely supported multiplicity vector over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement(pub Vec<u32>);

impl MonoidElement {
    pub fn zero(rank: usize) -> Self {
        MonoidElement(vec![0; rank])
    }

    pub fn unit(rank: usize, v: VertexId) -> Self {
        let mut x = Self::zero(rank);
        x.0[v.0] = 1;
        x
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other ≤ self` coordinatewise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MonoidElement)
    }

    pub fn display(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, name)| {
                if c == 1 {
                    name.clone()
                } else {
                    format!("{c}{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: Vec<String>,
    relations: Vec<(VertexId, MonoidElement)>,
}

pub fn monoid_of(graph: &Graph) -> MonoidPresentation {
    let rank = graph.vertex_count();
    let relations = graph
        .vertices()
        .filter(|&v| graph.in_degree(v) > 0)
        .map(|v| {
            let mut img = MonoidElement::zero(rank);
            for &e in graph.in_edges(v) {
                img.0[graph.d(e).0] += 1;
            }
            (v, img)
        })
        .collect();
    MonoidPresentation {
        generators: graph.vertex_names().to_vec(),
        relations,
    }
}

impl MonoidPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(VertexId, MonoidElement)] {
        &self.relations
    }

    pub fn generator(&self, v: VertexId) -> MonoidElement {
        MonoidElement::unit(self.rank(), v)
    }

    pub fn display(&self, x: &MonoidElement) -> String {
        x.display(&self.generators)
    }

    /// Relations written as `v = image`.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|(v, img)| format!("{} = {}", self.generators[v.0], self.display(img)))
            .collect()
    }

    /// Elements one rewrite away from `x` with degree at most `bound`.
    pub fn neighbors(&self, x: &MonoidElement, bound: usize) -> Vec<MonoidElement> {
        let mut out = Vec::new();
        let deg = x.degree();
        for (v, img) in &self.relations {
            let unit = self.generator(*v);
            if x.0[v.0] >= 1 && deg - 1 + img.degree() <= bound {
                let y = x
                    .checked_sub(&unit)
                    .expect("coordinate is positive")
                    .add(img);
                if y != *x {
                    out.push(y);
                }
            }
            if let Some(rest) = x.checked_sub(img) {
                if deg - img.degree() < bound {
                    let y = rest.add(&unit);
                    if y != *x {
                        out.push(y);
                    }
                }
            }
        }
        out
    }

    /// Whether `y` arises from `x` by a single rewrite in either direction.
    pub fn one_step(&self, x: &MonoidElement, y: &MonoidElement) -> bool {
        self.relations.iter().any(|(v, img)| {
            let unit = self.generator(*v);
            let forward = |a: &MonoidElement, b: &MonoidElement| {
                a.checked_sub(&unit)
                    .zip(b.checked_sub(img))
                    .is_some_and(|(p, q)| p == q)
            };
            forward(x, y) || forward(y, x)
        })
    }
}

/// Consecutive elements differ by one rewrite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteChain(pub Vec<MonoidElement>);

impl RewriteChain {
    pub fn start(&self) -> &MonoidElement {
        &self.0[0]
    }

    pub fn end(&self) -> &MonoidElement {
        self.0.last().expect("chains are nonempty")
    }

    pub fn is_valid(&self, p: &MonoidPresentation) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|x| x.0.len() == p.rank())
            && self.0.windows(2).all(|w| p.one_step(&w[0], &w[1]))
    }

    pub fn proves(&self, p: &MonoidPresentation, x: &MonoidElement, y: &MonoidElement) -> bool {
        self.is_valid(p) && self.start() == x && self.end() == y
    }

    fn reversed(mut self) -> Self {
        self.0.reverse();
        self
    }

    fn then(mut self, other: RewriteChain) -> Self {
        debug_assert_eq!(self.end(), other.start());
        self.0.extend(other.0.into_iter().skip(1));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equality {
    Yes(RewriteChain),
    Unknown,
}

fn check_dims(p: &MonoidPresentation, x: &MonoidElement) -> Result<(), MonoidError> {
    if x.0.len() == p.rank() {
        Ok(())
    } else {
        Err(MonoidError::DimensionMismatch {
            expected: p.rank(),
            got: x.0.len(),
        })
    }
}

fn walk_back(
    parent: &HashMap<MonoidElement, Option<MonoidElement>>,
    end: &MonoidElement,
) -> Vec<MonoidElement> {
    let mut out = vec![end.clone()];
    let mut at = end;
    while let Some(Some(prev)) = parent.get(at) {
        out.push(prev.clone());
        at = prev;
    }
    out.reverse();
    out
}

/// Bidirectional breadth-first search between `x` and `y` through elements of degree at most
/// `bound`. `Yes` is always correct; `Unknown` means the bounded search ran dry.
pub fn elements_equal(
    p: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    bound: usize,
) -> Result<Equality, MonoidError> {
    check_dims(p, x)?;
    check_dims(p, y)?;
    let needed = x.degree().max(y.degree());
    if bound < needed {
        return Err(MonoidError::BoundTooSmall { bound, needed });
    }
    if x == y {
        return Ok(Equality::Yes(RewriteChain(vec![x.clone()])));
    }
    let mut parents = [HashMap::new(), HashMap::new()];
    let mut frontiers = [vec![x.clone()], vec![y.clone()]];
    parents[0].insert(x.clone(), None);
    parents[1].insert(y.clone(), None);
    while !frontiers[0].is_empty() && !frontiers[1].is_empty() {
        let side = if frontiers[0].len() <= frontiers[1].len() {
            0
        } else {
            1
        };
        let mut next = Vec::new();
        for u in std::mem::take(&mut frontiers[side]) {
            for w in p.neighbors(&u, bound) {
                if parents[side].contains_key(&w) {
                    continue;
                }
                parents[side].insert(w.clone(), Some(u.clone()));
                if parents[1 - side].contains_key(&w) {
                    let from_x = walk_back(&parents[0], &w);
                    let from_y = walk_back(&parents[1], &w);
                    let chain = RewriteChain(from_x).then(RewriteChain(from_y).reversed());
                    return Ok(Equality::Yes(chain));
                }
                next.push(w);
            }
        }
        frontiers[side] = next;
    }
    Ok(Equality::Unknown)
}

/// The equivalence class of `start` in the rewrite graph on elements of bounded degree,
/// possibly cut short at a state limit.
struct Component {
    parent: HashMap<MonoidElement, Option<MonoidElement>>,
    order: Vec<MonoidElement>,
    truncated: bool,
}

impl Component {
    fn explore(p: &MonoidPresentation, start: &MonoidElement, bound: usize, limit: usize) -> Self {
        let mut parent = HashMap::new();
        parent.insert(start.clone(), None);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start.clone()]);
        let mut truncated = false;
        'search: while let Some(u) = queue.pop_front() {
            for w in p.neighbors(&u, bound) {
                if !parent.contains_key(&w) {
                    if order.len() >= limit {
                        truncated = true;
                        break 'search;
                    }
                    parent.insert(w.clone(), Some(u.clone()));
                    order.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        Component {
            parent,
            order,
            truncated,
        }
    }

    fn contains(&self, x: &MonoidElement) -> bool {
        self.parent.contains_key(x)
    }

    /// A chain between any two members, through the search root.
    fn chain(&self, x: &MonoidElement, y: &MonoidElement) -> RewriteChain {
        let to_x = RewriteChain(walk_back(&self.parent, x));
        let to_y = RewriteChain(walk_back(&self.parent, y));
        to_x.reversed().then(to_y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonoidBounds {
    /// Largest degree tried for the identity candidate.
    pub identity_degree: usize,
    /// Largest total degree visited by any search.
    pub degree: usize,
    /// Cap on elements visited per equivalence class.
    pub max_states: usize,
}

impl Default for MonoidBounds {
    fn default() -> Self {
        MonoidBounds {
            identity_degree: 6,
            degree: 24,
            max_states: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inverse {
    pub generator: VertexId,
    pub element: MonoidElement,
    /// From `a_v + x_v` to the identity.
    pub chain: RewriteChain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWitness {
    pub identity: MonoidElement,
    /// For each generator `v`, a chain from `a_v + f` to `a_v`.
    pub absorbs: Vec<(VertexId, RewriteChain)>,
    pub inverses: Vec<Inverse>,
}

impl GroupWitness {
    /// The nonzero part is a group once `f ≠ 0` absorbs every generator and every generator
    /// has a nonzero inverse; the monoid is conical since relation images are nonzero.
    pub fn is_valid(&self, p: &MonoidPresentation) -> bool {
        let f = &self.identity;
        let covered = |vs: Vec<VertexId>| vs == (0..p.rank()).map(VertexId).collect::<Vec<_>>();
        f.0.len() == p.rank()
            && !f.is_zero()
            && p.relations().iter().all(|(_, img)| !img.is_zero())
            && covered(self.absorbs.iter().map(|(v, _)| *v).collect())
            && covered(self.inverses.iter().map(|i| i.generator).collect())
            && self.absorbs.iter().all(|(v, chain)| {
                let a = p.generator(*v);
                chain.proves(p, &a.add(f), &a)
            })
            && self.inverses.iter().all(|inv| {
                let a = p.generator(inv.generator);
                !inv.element.is_zero() && inv.chain.proves(p, &a.add(&inv.element), f)
            })
    }
}

/// A normalized additive functional `t ≥ 0` respecting every relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveFunctional {
    pub weights: Vec<BigRational>,
}

impl AdditiveFunctional {
    pub fn is_valid(&self, p: &MonoidPresentation) -> bool {
        let t = &self.weights;
        let value = |x: &MonoidElement| -> BigRational {
            x.0.iter().zip(t).map(|(&c, w)| lp::int(c as i64) * w).sum()
        };
        t.len() == p.rank()
            && t.iter().all(|w| !w.is_negative())
            && t.iter().sum::<BigRational>() == lp::int(1)
            && p.relations().iter().all(|(v, img)| t[v.0] == value(img))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupTestVerdict {
    Group(GroupWitness),
    /// A group would force every functional to vanish on all generators.
    NotGroup(AdditiveFunctional),
    Unknown {
        bounds: MonoidBounds,
        reason: String,
    },
}

impl GroupTestVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            GroupTestVerdict::Group(_) => "Group",
            GroupTestVerdict::NotGroup(_) => "NotGroup",
            GroupTestVerdict::Unknown { .. } => "Unknown",
        }
    }
}

fn additive_functional(p: &MonoidPresentation) -> Option<AdditiveFunctional> {
    let n = p.rank();
    if n == 0 {
        return None;
    }
    let mut rows: Vec<Row> = p
        .relations()
        .iter()
        .map(|(v, img)| {
            let mut coeffs: Vec<BigRational> = img.0.iter().map(|&c| -lp::int(c as i64)).collect();
            coeffs[v.0] += lp::int(1);
            Row {
                coeffs,
                kind: RowKind::Eq,
                rhs: BigRational::zero(),
            }
        })
        .collect();
    rows.push(Row {
        coeffs: vec![lp::int(1); n],
        kind: RowKind::Eq,
        rhs: lp::int(1),
    });
    match lp::solve(&rows, n) {
        Feasibility::Feasible(weights) => Some(AdditiveFunctional { weights }),
        Feasibility::Infeasible(_) => None,
    }
}

fn deepening_schedule(max: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..).map(|k| 4 * k).take_while(|&b| b < max).collect();
    out.push(max);
    out
}

const IDENTITY_CANDIDATES: usize = 8;

/// Decides whether the nonzero elements form a group: an additive functional refutes it,
/// a found identity with inverses proves it, and anything else is `Unknown`.
pub fn is_group_nonzero(p: &MonoidPresentation, bounds: MonoidBounds) -> GroupTestVerdict {
    if let Some(t) = additive_functional(p) {
        return GroupTestVerdict::NotGroup(t);
    }
    let n = p.rank();
    if n == 0 {
        return GroupTestVerdict::Unknown {
            bounds,
            reason: "empty presentation".into(),
        };
    }
    let mut truncated = false;
    for bound in deepening_schedule(bounds.degree.max(2)) {
        let mut comps: Vec<Component> = Vec::new();
        let comp_of = |x: &MonoidElement, comps: &mut Vec<Component>| -> usize {
            if let Some(i) = comps.iter().position(|c| c.contains(x)) {
                return i;
            }
            comps.push(Component::explore(p, x, bound, bounds.max_states));
            comps.len() - 1
        };

        // identity candidates: f with a_v + f in the class of a_v, for every v
        let mut candidates: Option<BTreeSet<(usize, MonoidElement)>> = None;
        for v in (0..n).map(VertexId) {
            let a = p.generator(v);
            let c = comp_of(&a, &mut comps);
            truncated |= comps[c].truncated;
            let here: BTreeSet<(usize, MonoidElement)> = comps[c]
                .order
                .iter()
                .filter_map(|y| y.checked_sub(&a))
                .filter(|f| !f.is_zero() && f.degree() <= bounds.identity_degree)
                .map(|f| (f.degree(), f))
                .collect();
            candidates = Some(match candidates {
                None => here,
                Some(prev) => prev.intersection(&here).cloned().collect(),
            });
        }

        for (_, f) in candidates
            .unwrap_or_default()
            .into_iter()
            .take(IDENTITY_CANDIDATES)
        {
            let cf = comp_of(&f, &mut comps);
            truncated |= comps[cf].truncated;
            let mut absorbs = Vec::new();
            let mut inverses = Vec::new();
            for v in (0..n).map(VertexId) {
                let a = p.generator(v);
                let ca = comp_of(&a, &mut comps);
                absorbs.push((v, comps[ca].chain(&a.add(&f), &a)));
                let direct = comps[cf].order.iter().find_map(|y| {
                    y.checked_sub(&a)
                        .filter(|x| !x.is_zero())
                        .map(|x| (x, y.clone()))
                });
                let inverse = match direct {
                    Some((x, y)) => Some(Inverse {
                        generator: v,
                        element: x,
                        chain: comps[cf].chain(&y, &f),
                    }),
                    // a_v is itself the identity; f + a_v ≈ a_v ≈ f
                    None if comps[cf].contains(&a) => Some(Inverse {
                        generator: v,
                        element: f.clone(),
                        chain: comps[ca]
                            .chain(&a.add(&f), &a)
                            .then(comps[cf].chain(&a, &f)),
                    }),
                    None => None,
                };
                match inverse {
                    Some(inv) => inverses.push(inv),
                    None => break,
                }
            }
            if inverses.len() == n {
                return GroupTestVerdict::Group(GroupWitness {
                    identity: f,
                    absorbs,
                    inverses,
                });
            }
        }
        if truncated {
            break;
        }
    }
    GroupTestVerdict::Unknown {
        bounds,
        reason: if truncated {
            format!("state limit {} reached", bounds.max_states)
        } else {
            format!(
                "no identity of degree ≤ {} with inverses within degree {}",
                bounds.identity_degree, bounds.degree
            )
        },
    }
}

impl fmt::Display for GroupTestVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
