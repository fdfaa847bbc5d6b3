use crate::closure::ClosureDiagram;
use crate::disk::{Disk, DiskEngine, DiskQuery};
use crate::error::{Error, Result};
use crate::oracle::{EmbeddedRegions, DEFAULT_FACE_BOUND};

/// Which disk search answers queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Walk,
    Oracle,
    /// Runs both and fails on any disagreement.
    Both,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "walk" => Ok(Engine::Walk),
            "oracle" => Ok(Engine::Oracle),
            "both" => Ok(Engine::Both),
            other => Err(Error::Parse(format!("unknown engine {other:?}"))),
        }
    }
}

pub struct DiskCounter<'a> {
    walk: Option<DiskEngine<'a>>,
    oracle: Option<EmbeddedRegions>,
}

impl<'a> DiskCounter<'a> {
    pub fn new(diagram: &'a ClosureDiagram, engine: Engine, cap: Option<usize>) -> Result<Self> {
        let walk = match engine {
            Engine::Walk | Engine::Both => {
                let e = DiskEngine::new(diagram)?;
                Some(match cap {
                    Some(cap) => e.with_cap(cap),
                    None => e,
                })
            }
            Engine::Oracle => None,
        };
        let oracle = match engine {
            Engine::Oracle | Engine::Both => Some(EmbeddedRegions::new(diagram, DEFAULT_FACE_BOUND)?),
            Engine::Walk => None,
        };
        Ok(DiskCounter { walk, oracle })
    }

    pub fn walk(diagram: &'a ClosureDiagram) -> Result<Self> {
        DiskCounter::new(diagram, Engine::Walk, None)
    }

    pub fn disks(&self, query: &DiskQuery) -> Result<Vec<Disk>> {
        match (&self.walk, &self.oracle) {
            (Some(w), None) => w.enumerate(query),
            (None, Some(o)) => Ok(o.query(query)),
            (Some(w), Some(o)) => {
                let walked = w.enumerate(query)?;
                if walked != o.query(query) {
                    return Err(Error::ValidationFailure(format!("disk engines disagree on {query}")));
                }
                Ok(walked)
            }
            (None, None) => unreachable!("a counter always holds an engine"),
        }
    }
}
