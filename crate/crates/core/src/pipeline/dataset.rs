//! JSON-lines dataset format: one observed game per line.
//!
//! Record shape:
//!
//! ```json
//! {"id":"g00001","scenario":"intersection","task":"left-turn","velocity_mps":8.4,
//!  "model":"nash",
//!  "players":[{"actions":["wait","go"],"rule_action":0},{"actions":["wait","go"]}],
//!  "objectives":["safety","progress"],
//!  "payoffs":{"0":{"0,0":[0.5,0.1],"0,1":[0.8,0.1],"1,0":[-0.9,1.0],"1,1":[0.2,-0.5]},
//!             "1":{"0,0":[0.3,0.4],"0,1":[-0.7,0.6],"1,0":[0.6,-0.2],"1,1":[0.0,0.3]}},
//!  "observed":[0,0],"focal":0}
//! ```
//!
//! `model` (the generating reasoning model) and `rule_action` are optional.
//! Every parse or validation failure carries the 1-based line number.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::game::{MultiObjectiveGame, StrategyProfile};
use crate::tree::{FeatureRecord, Scenario};
use crate::{Error, Result};

use super::ObservationRecord;

#[derive(Debug, Serialize, Deserialize)]
struct RawPlayer {
    actions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rule_action: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawRecord {
    id: String,
    scenario: Scenario,
    task: String,
    velocity_mps: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    model: String,
    players: Vec<RawPlayer>,
    objectives: Vec<String>,
    payoffs: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
    observed: Vec<usize>,
    focal: usize,
}

pub fn load_dataset(path: &Path) -> Result<Vec<ObservationRecord>> {
    read_dataset(BufReader::new(File::open(path)?))
}

/// Reads records line by line; blank lines are skipped and an empty input
/// yields an empty list.
pub fn read_dataset<R: BufRead>(reader: R) -> Result<Vec<ObservationRecord>> {
    let mut records = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line_number = index + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(parse_record(&line).map_err(|e| attach_line(line_number, e))?);
    }
    Ok(records)
}

pub fn save_dataset(path: &Path, records: &[ObservationRecord]) -> Result<()> {
    let mut writer = BufWriter::new(File::create(path)?);
    write_dataset(&mut writer, records)?;
    writer.flush()?;
    Ok(())
}

pub fn write_dataset<W: Write>(writer: &mut W, records: &[ObservationRecord]) -> Result<()> {
    for record in records {
        let raw = to_raw(record);
        let line = serde_json::to_string(&raw)
            .map_err(|e| Error::InvalidArgument(format!("unserializable record: {e}")))?;
        writeln!(writer, "{line}")?;
    }
    Ok(())
}

fn attach_line(line: usize, error: Error) -> Error {
    match error {
        Error::Dataset { .. } => error,
        other => Error::Dataset { line, message: other.to_string() },
    }
}

fn parse_record(line: &str) -> Result<ObservationRecord> {
    let raw: RawRecord = serde_json::from_str(line)
        .map_err(|e| Error::InvalidArgument(format!("malformed record: {e}")))?;

    if !raw.velocity_mps.is_finite() || raw.velocity_mps < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "velocity_mps must be a non-negative number (got {})",
            raw.velocity_mps
        )));
    }
    let action_labels: Vec<Vec<String>> = raw.players.iter().map(|p| p.actions.clone()).collect();
    let rule_actions: Vec<Option<usize>> = raw.players.iter().map(|p| p.rule_action).collect();
    let mut game = MultiObjectiveGame::new(raw.objectives, action_labels, rule_actions)?;

    for (player_key, cells) in &raw.payoffs {
        let player: usize = player_key.parse().map_err(|_| {
            Error::InvalidArgument(format!("payoff key '{player_key}' is not a player index"))
        })?;
        if player >= game.player_count() {
            return Err(Error::InvalidArgument(format!(
                "payoff key '{player_key}' out of range (game has {} players)",
                game.player_count()
            )));
        }
        for (profile_key, values) in cells {
            let profile = parse_profile_key(profile_key)?;
            game.set_payoff(player, &profile, values.clone())?;
        }
    }

    let violations = game.validate();
    if !violations.is_empty() {
        let mut message = violations[0].to_string();
        if violations.len() > 1 {
            message.push_str(&format!(" (and {} more violations)", violations.len() - 1));
        }
        return Err(Error::InvalidArgument(message));
    }

    let observed = StrategyProfile::new(raw.observed);
    game.check_profile(&observed)?;
    game.check_player(raw.focal)?;

    Ok(ObservationRecord {
        id: raw.id,
        features: FeatureRecord {
            velocity: raw.velocity_mps,
            scenario: raw.scenario,
            task: raw.task,
            model: raw.model,
        },
        game,
        focal_player: raw.focal,
        observed,
    })
}

fn parse_profile_key(key: &str) -> Result<StrategyProfile> {
    let actions = key
        .split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                Error::InvalidArgument(format!("profile key '{key}' is not a comma-separated index list"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrategyProfile::new(actions))
}

fn profile_key(profile: &StrategyProfile) -> String {
    profile
        .actions()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn to_raw(record: &ObservationRecord) -> RawRecord {
    let game = &record.game;
    let players = (0..game.player_count())
        .map(|p| RawPlayer {
            actions: game.action_labels(p).to_vec(),
            rule_action: game.rule_action(p),
        })
        .collect();
    let mut payoffs = BTreeMap::new();
    for player in 0..game.player_count() {
        let mut cells = BTreeMap::new();
        for profile in game.space().profiles() {
            if let Some(u) = game.payoff(player, &profile) {
                cells.insert(profile_key(&profile), u.values().to_vec());
            }
        }
        payoffs.insert(player.to_string(), cells);
    }
    RawRecord {
        id: record.id.clone(),
        scenario: record.features.scenario,
        task: record.features.task.clone(),
        velocity_mps: record.features.velocity,
        model: record.features.model.clone(),
        players,
        objectives: game.objective_names().to_vec(),
        payoffs,
        observed: record.observed.actions().to_vec(),
        focal: record.focal_player,
    }
}
