//! Solver and adversary identifiers shared by the subcommands.

use std::fmt;
use std::str::FromStr;

use matuso::solvers::{
    ceil_log2, BranchingRecovery, JumpAntipodal, MxySolver, MxySolverFromSinkFinder, NaiveRecovery,
    RandomProbe, SinkFinder, SinkFinderFromMxy,
};

/// Every solver is available in both oracle models through the reductions;
/// `native_model` records which count the solver is usually quoted in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverId {
    JumpAntipodal,
    RealizableLog2,
    NaiveRecover,
    RandomProbe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryModel {
    VertexEvaluation,
    MatrixVector,
}

impl SolverId {
    pub const ALL: [SolverId; 4] = [
        SolverId::JumpAntipodal,
        SolverId::RealizableLog2,
        SolverId::NaiveRecover,
        SolverId::RandomProbe,
    ];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            SolverId::JumpAntipodal => "jump-antipodal",
            SolverId::RealizableLog2 => "realizable-log2",
            SolverId::NaiveRecover => "naive-recover",
            SolverId::RandomProbe => "random-probe",
        }
    }

    #[must_use]
    pub fn native_model(self) -> QueryModel {
        match self {
            SolverId::JumpAntipodal | SolverId::RealizableLog2 => QueryModel::VertexEvaluation,
            SolverId::NaiveRecover | SolverId::RandomProbe => QueryModel::MatrixVector,
        }
    }

    /// Requires a realizable instance.
    #[must_use]
    pub fn needs_realizable(self) -> bool {
        matches!(self, SolverId::RealizableLog2)
    }

    #[must_use]
    pub fn sink_finder(self, seed: u64) -> Box<dyn SinkFinder> {
        match self {
            SolverId::JumpAntipodal => Box::new(JumpAntipodal::default()),
            SolverId::RealizableLog2 => Box::new(SinkFinderFromMxy::new(BranchingRecovery)),
            SolverId::NaiveRecover => Box::new(SinkFinderFromMxy::new(NaiveRecovery)),
            SolverId::RandomProbe => Box::new(SinkFinderFromMxy::new(RandomProbe { seed })),
        }
    }

    #[must_use]
    pub fn mxy_solver(self, seed: u64) -> Box<dyn MxySolver> {
        match self {
            SolverId::JumpAntipodal => {
                Box::new(MxySolverFromSinkFinder::new(JumpAntipodal::default()))
            }
            SolverId::RealizableLog2 => Box::new(BranchingRecovery),
            SolverId::NaiveRecover => Box::new(NaiveRecovery),
            SolverId::RandomProbe => Box::new(RandomProbe { seed }),
        }
    }

    /// Worst-case vertex evaluations on an `n`-dimensional instance of the
    /// solver's supported class.
    #[must_use]
    pub fn vertex_eval_bound(self, n: usize) -> usize {
        let l = ceil_log2(n);
        match self {
            SolverId::JumpAntipodal => n,
            SolverId::RealizableLog2 => 1 + l + l * l,
            // One anchor evaluation plus n (respectively up to n) queries.
            SolverId::NaiveRecover | SolverId::RandomProbe => n + 1,
        }
    }
}

impl FromStr for SolverId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|id| id.name()).collect();
                format!("unknown solver {s:?}; expected one of {}", known.join(", "))
            })
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversaryId {
    General,
    GoodPaths,
}

impl AdversaryId {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            AdversaryId::General => "general",
            AdversaryId::GoodPaths => "goodpaths",
        }
    }

    /// Matrix-vector queries any correct solver must spend against this
    /// adversary.
    #[must_use]
    pub fn lower_bound(self, n: usize) -> usize {
        match self {
            AdversaryId::General => n.saturating_sub(1),
            AdversaryId::GoodPaths => matuso::solvers::floor_log2(n),
        }
    }
}

impl FromStr for AdversaryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" | "general-adversary" => Ok(AdversaryId::General),
            "goodpaths" | "goodpaths-adversary" | "good-paths" => Ok(AdversaryId::GoodPaths),
            other => Err(format!(
                "unknown adversary {other:?}; expected general or goodpaths"
            )),
        }
    }
}

impl fmt::Display for AdversaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceClass {
    General,
    Realizable,
}

impl InstanceClass {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            InstanceClass::General => "general",
            InstanceClass::Realizable => "realizable",
        }
    }
}

impl FromStr for InstanceClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(InstanceClass::General),
            "realizable" => Ok(InstanceClass::Realizable),
            other => Err(format!(
                "unknown instance class {other:?}; expected general or realizable"
            )),
        }
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
