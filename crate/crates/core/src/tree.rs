//! CART regression tree over situational driving features.
//!
//! Trees map a [`FeatureRecord`] (velocity, scenario, task, reasoning-model
//! tag) to a real-valued aggregation parameter. Growth is greedy top-down on
//! SSE reduction: numeric splits test midpoints between sorted distinct
//! values, categorical splits test all proper subsets up to 8 levels and
//! one-vs-rest beyond. Candidate order is fixed (velocity, then scenario,
//! task, model; thresholds and subsets in ascending order) and ties keep the
//! first candidate, so fitting is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Minimum SSE reduction for a split to be accepted.
const MIN_GAIN: f64 = 1e-12;

/// Driving scenario a game was observed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Intersection,
    Roundabout,
    Crosswalk,
}

impl Scenario {
    pub const ALL: [Scenario; 3] =
        [Scenario::Intersection, Scenario::Roundabout, Scenario::Crosswalk];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Intersection => "intersection",
            Scenario::Roundabout => "roundabout",
            Scenario::Crosswalk => "crosswalk",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scenario '{s}'")))
    }
}

/// The situational features of one observed game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRecord {
    /// Focal vehicle speed in metres per second.
    pub velocity: f64,
    pub scenario: Scenario,
    /// Manoeuvre being carried out (e.g. "left-turn").
    pub task: String,
    /// Reasoning-model tag the parameter was estimated under.
    pub model: String,
}

impl FeatureRecord {
    /// Copy of the record with a different model tag.
    pub fn with_model(&self, model: &str) -> FeatureRecord {
        FeatureRecord { model: model.to_string(), ..self.clone() }
    }
}

/// Tree growth limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeParams {
    /// Maximum number of splits on any root-to-leaf path.
    pub max_depth: usize,
    /// Minimum training samples in each child of a split.
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams { max_depth: 6, min_leaf: 5 }
    }
}

/// Feature tested by a split node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureName {
    Velocity,
    Scenario,
    Task,
    Model,
}

impl FeatureName {
    const CATEGORICAL: [FeatureName; 3] =
        [FeatureName::Scenario, FeatureName::Task, FeatureName::Model];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Left,
    Right,
}

/// Payload of one tree node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Split {
        feature: FeatureName,
        /// Numeric cut: records with velocity ≤ threshold go left.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        threshold: Option<f64>,
        /// Categorical cut: values routed left / right; anything unseen at
        /// fit time routes to `majority`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        left_categories: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        right_categories: Option<Vec<String>>,
        left: usize,
        right: usize,
        /// Branch holding the larger share of training samples.
        majority: Branch,
    },
    Leaf {
        /// Mean training target in this leaf.
        value: f64,
        /// Training samples that reached this leaf.
        count: usize,
    },
}

/// One node of a fitted tree; `id` is its position in the node list and
/// children always have larger ids than their parent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub parent: Option<usize>,
    #[serde(flatten)]
    pub kind: NodeKind,
}

/// A fitted CART regression tree (root at node 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionTree {
    pub params: TreeParams,
    pub nodes: Vec<Node>,
}

impl RegressionTree {
    /// Fits a tree to the records and targets. Growth is deterministic; the
    /// seed is part of the training interface but does not influence it.
    pub fn fit(
        records: &[FeatureRecord],
        targets: &[f64],
        params: TreeParams,
        _seed: u64,
    ) -> Result<RegressionTree> {
        if records.is_empty() {
            return Err(Error::InvalidArgument("cannot fit a tree to zero samples".into()));
        }
        if records.len() != targets.len() {
            return Err(Error::InvalidArgument(format!(
                "got {} records but {} targets",
                records.len(),
                targets.len()
            )));
        }
        if targets.iter().any(|t| !t.is_finite()) || records.iter().any(|r| !r.velocity.is_finite())
        {
            return Err(Error::InvalidArgument(
                "targets and velocities must be finite".into(),
            ));
        }
        if params.min_leaf == 0 {
            return Err(Error::InvalidArgument("min_leaf must be at least 1".into()));
        }
        let mut grower = Grower { records, targets, params, nodes: Vec::new() };
        grower.grow((0..records.len()).collect(), 0, None);
        Ok(RegressionTree { params, nodes: grower.nodes })
    }

    /// Predicted parameter for one record.
    pub fn predict(&self, record: &FeatureRecord) -> f64 {
        let mut id = 0;
        loop {
            match &self.nodes[id].kind {
                NodeKind::Leaf { value, .. } => return *value,
                NodeKind::Split {
                    feature,
                    threshold,
                    left_categories,
                    right_categories,
                    left,
                    right,
                    majority,
                } => {
                    let branch = match feature {
                        FeatureName::Velocity => {
                            let t = threshold.expect("validated velocity split");
                            if record.velocity <= t {
                                Branch::Left
                            } else {
                                Branch::Right
                            }
                        }
                        _ => {
                            let value = categorical_value(record, *feature);
                            let in_left = left_categories
                                .as_ref()
                                .is_some_and(|c| c.binary_search_by(|x| x.as_str().cmp(value)).is_ok());
                            let in_right = right_categories
                                .as_ref()
                                .is_some_and(|c| c.binary_search_by(|x| x.as_str().cmp(value)).is_ok());
                            if in_left {
                                Branch::Left
                            } else if in_right {
                                Branch::Right
                            } else {
                                *majority
                            }
                        }
                    };
                    id = match branch {
                        Branch::Left => *left,
                        Branch::Right => *right,
                    };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn depth_of(nodes: &[Node], id: usize) -> usize {
            match &nodes[id].kind {
                NodeKind::Leaf { .. } => 0,
                NodeKind::Split { left, right, .. } => {
                    1 + depth_of(nodes, *left).max(depth_of(nodes, *right))
                }
            }
        }
        depth_of(&self.nodes, 0)
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n.kind, NodeKind::Leaf { .. })).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<RegressionTree> {
        let tree: RegressionTree = serde_json::from_str(json)
            .map_err(|e| Error::InvalidArgument(format!("malformed tree JSON: {e}")))?;
        tree.check_structure()?;
        Ok(tree)
    }

    fn check_structure(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(format!("malformed tree: {msg}")));
        if self.nodes.is_empty() {
            return bad("no nodes".into());
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return bad(format!("node {i} carries id {}", node.id));
            }
            match (i, node.parent) {
                (0, None) => {}
                (0, Some(_)) => return bad("root must have no parent".into()),
                (_, None) => return bad(format!("node {i} has no parent")),
                (_, Some(p)) if p >= i => return bad(format!("node {i} precedes its parent {p}")),
                _ => {}
            }
            if let NodeKind::Split {
                feature, threshold, left_categories, right_categories, left, right, ..
            } = &node.kind
            {
                for &child in [left, right] {
                    if child <= i || child >= self.nodes.len() {
                        return bad(format!("node {i} has out-of-order child {child}"));
                    }
                    if self.nodes[child].parent != Some(i) {
                        return bad(format!("node {child} does not point back to parent {i}"));
                    }
                }
                if left == right {
                    return bad(format!("node {i} reuses one child twice"));
                }
                let consistent = match feature {
                    FeatureName::Velocity => {
                        threshold.is_some()
                            && left_categories.is_none()
                            && right_categories.is_none()
                    }
                    _ => {
                        threshold.is_none()
                            && left_categories.is_some()
                            && right_categories.is_some()
                    }
                };
                if !consistent {
                    return bad(format!("node {i} mixes numeric and categorical fields"));
                }
            }
        }
        Ok(())
    }
}

fn categorical_value(record: &FeatureRecord, feature: FeatureName) -> &str {
    match feature {
        FeatureName::Scenario => record.scenario.name(),
        FeatureName::Task => &record.task,
        FeatureName::Model => &record.model,
        FeatureName::Velocity => unreachable!("velocity is numeric"),
    }
}

enum SplitRule {
    Velocity { threshold: f64 },
    Categories { feature: FeatureName, left: Vec<String>, right: Vec<String> },
}

impl SplitRule {
    fn goes_left(&self, record: &FeatureRecord) -> bool {
        match self {
            SplitRule::Velocity { threshold } => record.velocity <= *threshold,
            SplitRule::Categories { feature, left, .. } => {
                let value = categorical_value(record, *feature);
                left.binary_search_by(|x| x.as_str().cmp(value)).is_ok()
            }
        }
    }
}

/// Accumulated target statistics supporting O(1) SSE evaluation.
#[derive(Debug, Clone, Copy, Default)]
struct Stats {
    n: usize,
    sum: f64,
    sum_sq: f64,
}

impl Stats {
    fn add(&mut self, target: f64) {
        self.n += 1;
        self.sum += target;
        self.sum_sq += target * target;
    }

    fn merge(&mut self, other: Stats) {
        self.n += other.n;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    fn sse(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (self.sum_sq - self.sum * self.sum / self.n as f64).max(0.0)
    }

    fn mean(&self) -> f64 {
        self.sum / self.n as f64
    }
}

struct Grower<'a> {
    records: &'a [FeatureRecord],
    targets: &'a [f64],
    params: TreeParams,
    nodes: Vec<Node>,
}

impl Grower<'_> {
    fn grow(&mut self, indices: Vec<usize>, depth: usize, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        let mut stats = Stats::default();
        for &i in &indices {
            stats.add(self.targets[i]);
        }
        self.nodes.push(Node {
            id,
            parent,
            kind: NodeKind::Leaf { value: stats.mean(), count: stats.n },
        });

        if depth >= self.params.max_depth
            || indices.len() < 2 * self.params.min_leaf
            || stats.sse() <= MIN_GAIN
        {
            return id;
        }
        let Some(rule) = self.best_split(&indices, stats.sse()) else {
            return id;
        };

        let (left_indices, right_indices): (Vec<usize>, Vec<usize>) =
            indices.into_iter().partition(|&i| rule.goes_left(&self.records[i]));
        let majority =
            if left_indices.len() >= right_indices.len() { Branch::Left } else { Branch::Right };
        let left = self.grow(left_indices, depth + 1, Some(id));
        let right = self.grow(right_indices, depth + 1, Some(id));

        let (feature, threshold, left_categories, right_categories) = match rule {
            SplitRule::Velocity { threshold } => (FeatureName::Velocity, Some(threshold), None, None),
            SplitRule::Categories { feature, left, right } => {
                (feature, None, Some(left), Some(right))
            }
        };
        self.nodes[id].kind = NodeKind::Split {
            feature,
            threshold,
            left_categories,
            right_categories,
            left,
            right,
            majority,
        };
        id
    }

    fn best_split(&self, indices: &[usize], parent_sse: f64) -> Option<SplitRule> {
        let min_leaf = self.params.min_leaf;
        let mut best: Option<(f64, SplitRule)> = None;
        let consider = |gain: f64, rule: SplitRule, best: &mut Option<(f64, SplitRule)>| {
            if gain > MIN_GAIN && best.as_ref().map_or(true, |(g, _)| gain > *g) {
                *best = Some((gain, rule));
            }
        };

        // Velocity: all midpoints between consecutive distinct values.
        let mut pairs: Vec<(f64, f64)> =
            indices.iter().map(|&i| (self.records[i].velocity, self.targets[i])).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: Stats = {
            let mut s = Stats::default();
            for &(_, t) in &pairs {
                s.add(t);
            }
            s
        };
        let mut left = Stats::default();
        for cut in 1..pairs.len() {
            left.add(pairs[cut - 1].1);
            if pairs[cut - 1].0 == pairs[cut].0 {
                continue;
            }
            let right = Stats {
                n: total.n - left.n,
                sum: total.sum - left.sum,
                sum_sq: total.sum_sq - left.sum_sq,
            };
            if left.n < min_leaf || right.n < min_leaf {
                continue;
            }
            let gain = parent_sse - left.sse() - right.sse();
            let threshold = 0.5 * (pairs[cut - 1].0 + pairs[cut].0);
            consider(gain, SplitRule::Velocity { threshold }, &mut best);
        }

        for feature in FeatureName::CATEGORICAL {
            let mut groups: BTreeMap<&str, Stats> = BTreeMap::new();
            for &i in indices {
                groups
                    .entry(categorical_value(&self.records[i], feature))
                    .or_default()
                    .add(self.targets[i]);
            }
            if groups.len() < 2 {
                continue;
            }
            let categories: Vec<&str> = groups.keys().copied().collect();
            let stats: Vec<Stats> = groups.values().copied().collect();
            let k = categories.len();

            let evaluate = |members: &[bool], best: &mut Option<(f64, SplitRule)>| {
                let mut left = Stats::default();
                let mut right = Stats::default();
                for (j, &in_left) in members.iter().enumerate() {
                    if in_left {
                        left.merge(stats[j]);
                    } else {
                        right.merge(stats[j]);
                    }
                }
                if left.n < min_leaf || right.n < min_leaf {
                    return;
                }
                let gain = parent_sse - left.sse() - right.sse();
                let pick = |keep: bool| {
                    members
                        .iter()
                        .enumerate()
                        .filter(|&(_, m)| *m == keep)
                        .map(|(j, _)| categories[j].to_string())
                        .collect::<Vec<_>>()
                };
                consider(
                    gain,
                    SplitRule::Categories { feature, left: pick(true), right: pick(false) },
                    best,
                );
            };

            if k <= 8 {
                // Each 2-partition exactly once: the first category stays left.
                for mask in 0..(1u32 << (k - 1)) {
                    let mut members = vec![false; k];
                    members[0] = true;
                    for j in 1..k {
                        members[j] = mask & (1 << (j - 1)) != 0;
                    }
                    if members.iter().all(|&m| m) {
                        continue;
                    }
                    evaluate(&members, &mut best);
                }
            } else {
                for lone in 0..k {
                    let mut members = vec![false; k];
                    members[lone] = true;
                    evaluate(&members, &mut best);
                }
            }
        }

        best.map(|(_, rule)| rule)
    }
}
