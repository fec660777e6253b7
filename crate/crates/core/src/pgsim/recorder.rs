use std::collections::HashSet;

use super::Event;
use crate::model::{EdgeLabel, GraphBuilder, ModelError, NodeLabel, ProvGraph};

/// Every application label a simulator graph can carry.
pub const SCHEMA_LABELS: [&str; 8] = [
    "pg:Capturing",
    "pg:Collecting",
    "pg:Disposing",
    "pg:Player",
    "pg:PlayerState",
    "pg:PokeStop",
    "pg:Pokemon",
    "pg:Throwing",
];

const PLAYER: &str = "player";
const AGENT: &str = "agent";

fn app(name: &str) -> NodeLabel {
    NodeLabel::app(name).expect("schema labels are valid")
}

/// Builds the provenance graph of one player.
///
/// The player is an agent plus a `pg:Player` entity; its evolving state is a
/// chain of `pg:PlayerState` entities. Each activity uses the current state
/// and the object acted upon, is associated with the agent and generates the
/// next state, which derives from the previous one and specialises the
/// player entity.
pub struct ProvRecorder {
    builder: GraphBuilder,
    state: String,
    activities: usize,
    objects: HashSet<String>,
}

impl ProvRecorder {
    pub fn new(graph_id: impl Into<String>) -> Self {
        let mut builder = GraphBuilder::new(graph_id);
        builder
            .node(PLAYER, [NodeLabel::ENTITY, app("pg:Player")])
            .node(AGENT, [NodeLabel::AGENT])
            .node("state0", [NodeLabel::ENTITY, app("pg:PlayerState")])
            .edge("state0", PLAYER, EdgeLabel::Spe);
        ProvRecorder { builder, state: "state0".into(), activities: 0, objects: HashSet::new() }
    }

    fn object(&mut self, id: String, label: &str) -> String {
        if self.objects.insert(id.clone()) {
            self.builder.node(id.clone(), [NodeLabel::ENTITY, app(label)]);
        }
        id
    }

    fn activity(&mut self, kind: &str, label: &str, object: &str) {
        self.activities += 1;
        let k = self.activities;
        let act = format!("{kind}{k}");
        let next = format!("state{k}");
        self.builder
            .node(act.clone(), [NodeLabel::ACTIVITY, app(label)])
            .node(next.clone(), [NodeLabel::ENTITY, app("pg:PlayerState")])
            .edge(act.clone(), self.state.clone(), EdgeLabel::Use)
            .edge(act.clone(), object, EdgeLabel::Use)
            .edge(act.clone(), AGENT, EdgeLabel::Waw)
            .edge(next.clone(), act, EdgeLabel::Gen)
            .edge(next.clone(), self.state.clone(), EdgeLabel::Der)
            .edge(next.clone(), PLAYER, EdgeLabel::Spe);
        self.state = next;
    }

    pub fn record(&mut self, event: &Event) {
        match *event {
            Event::Collected { stop, .. } => {
                let stop = self.object(format!("pokestop{stop}"), "pg:PokeStop");
                self.activity("collecting", "pg:Collecting", &stop);
            }
            Event::Thrown { pokemon, captured, .. } => {
                let mon = self.object(format!("pokemon{pokemon}"), "pg:Pokemon");
                self.activity("throwing", "pg:Throwing", &mon);
                if captured {
                    self.activity("capturing", "pg:Capturing", &mon);
                }
            }
            Event::Disposed { pokemon, .. } => {
                let mon = self.object(format!("pokemon{pokemon}"), "pg:Pokemon");
                self.activity("disposing", "pg:Disposing", &mon);
            }
        }
    }

    pub fn finish(self) -> Result<ProvGraph, ModelError> {
        self.builder.build()
    }
}
