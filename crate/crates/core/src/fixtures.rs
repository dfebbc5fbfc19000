//! Bundled example scenarios, one per figure or worked example.

use crate::error::Result;
use crate::scenario::Scenario;

pub struct Fixture {
    pub name: &'static str,
    /// What the fixture reproduces, for the manifest.
    pub shows: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn scenario(&self) -> Result<Scenario> {
        Scenario::parse(self.text)
    }

    pub fn file_name(&self) -> String {
        format!("{}.scenario", self.name)
    }
}

// A∧B = {1,4}, A∧¬B = {3,8}, the rest ¬A.
#[cfg(test)]
const EIGHT_WORLDS: &str = r#"worlds = [
  { id = "1", valuation = { A = true, B = true } },
  { id = "2", valuation = { A = false, B = true } },
  { id = "3", valuation = { A = true, B = false } },
  { id = "4", valuation = { A = true, B = true } },
  { id = "5", valuation = { A = false, B = false } },
  { id = "6", valuation = { A = false, B = true } },
  { id = "7", valuation = { A = false, B = false } },
  { id = "8", valuation = { A = true, B = false } },
]
"#;

macro_rules! eight {
    ($head:literal) => {
        concat!("atoms = [\"A\", \"B\"]\nprior = \"8 < 7 < 6 < 4,5 < 1,2,3\"\n", $head, "worlds = [
  { id = \"1\", valuation = { A = true, B = true } },
  { id = \"2\", valuation = { A = false, B = true } },
  { id = \"3\", valuation = { A = true, B = false } },
  { id = \"4\", valuation = { A = true, B = true } },
  { id = \"5\", valuation = { A = false, B = false } },
  { id = \"6\", valuation = { A = false, B = true } },
  { id = \"7\", valuation = { A = false, B = false } },
  { id = \"8\", valuation = { A = true, B = false } },
]
")
    };
}

const FIG6: &str = r#"atoms = ["A", "B"]
prior = "8 < 5,6,7 < 4 < 1,2,3"
input = "A => B"
step1 = "5,6,7 < 8 < 1,2,3 < 4"
result = "5,6,7 < 8 < 4 < 1,2,3"
worlds = [
  { id = "1", valuation = { A = true, B = true } },
  { id = "2", valuation = { A = false, B = true } },
  { id = "3", valuation = { A = false, B = false } },
  { id = "4", valuation = { A = true, B = false } },
  { id = "5", valuation = { A = true, B = true } },
  { id = "6", valuation = { A = false, B = true } },
  { id = "7", valuation = { A = false, B = false } },
  { id = "8", valuation = { A = true, B = false } },
]
"#;

const FIG7: &str = r#"atoms = ["A", "B"]
prior = "1 < 3 < 4 < 2"
operator = "hansson"
input = "A => B"
worlds = [
  { id = "1", valuation = { A = false, B = false } },
  { id = "2", valuation = { A = true, B = true } },
  { id = "3", valuation = { A = true, B = false } },
  { id = "4", valuation = { A = false, B = true } },
]
"#;

// x ∈ A∧¬B, y ∈ ¬A∧B, z ∈ A∧B, w ∈ ¬A∧¬B.
macro_rules! xyzw {
    ($prior:literal) => {
        concat!("atoms = [\"A\", \"B\"]\nprior = \"", $prior, "\"\noperator = \"circledast:natural\"\ninput = \"A => B\"
worlds = [
  { id = \"x\", valuation = { A = true, B = false } },
  { id = \"y\", valuation = { A = false, B = true } },
  { id = \"z\", valuation = { A = true, B = true } },
  { id = \"w\", valuation = { A = false, B = false } },
]
")
    };
}

const PROP1: &str = r#"atoms = ["A", "B"]
prior = "z < w,x,y"
operator = "natural"
input = "A => B"
worlds = [
  { id = "w", valuation = { A = true, B = true } },
  { id = "x", valuation = { A = true, B = false } },
  { id = "y", valuation = { A = false, B = true } },
  { id = "z", valuation = { A = false, B = false } },
]
"#;

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "fig1",
        shows: "Figure 1: restrained revision by A -> B leaves min over A inside not-B",
        text: eight!("operator = \"circledast:restrained\"\ninput = \"A => B\"\n"),
    },
    Fixture {
        name: "fig2",
        shows: "Figure 2: down-set of A and B in step1 and the promoted worlds",
        text: eight!("operator = \"circledast:restrained\"\ninput = \"A => B\"\n"),
    },
    Fixture {
        name: "fig3",
        shows: "Figure 3: circledast result over the restrained base",
        text: eight!("operator = \"circledast:restrained\"\ninput = \"A => B\"\n"),
    },
    Fixture {
        name: "fig4",
        shows: "Figure 4: natural, restrained and lexicographic pipelines",
        text: eight!("operator = \"circledast:natural\"\ninput = \"A => B\"\n"),
    },
    Fixture {
        name: "fig5",
        shows: "Figure 5: BG contraction and expansion against the circledast natural result",
        text: eight!("operator = \"bg\"\ninput = \"A => B\"\n"),
    },
    Fixture {
        name: "fig6",
        shows: "Figure 6: P3' and P4' hold while P3 and P4 fail",
        text: FIG6,
    },
    Fixture {
        name: "fig7",
        shows: "Figure 7: prior for Hansson revision by A => B",
        text: FIG7,
    },
    Fixture {
        name: "fig8",
        shows: "Figure 8: the two closest TPOs accepting A => B",
        text: FIG7,
    },
    Fixture {
        name: "example1",
        shows: "Example 1: z and w stay tied after revision by A => B",
        text: xyzw!("x,y < z,w"),
    },
    Fixture {
        name: "example2",
        shows: "Example 2: y stays at least as plausible as x after revision by A => B",
        text: xyzw!("w < x,y < z"),
    },
    Fixture {
        name: "prop1",
        shows: "Countermodel: A -> B believed but A => B not accepted",
        text: PROP1,
    },
    Fixture {
        name: "prop7",
        shows: "Countermodel: P3' and P4' do not imply P3 and P4 (same orders as fig6)",
        text: FIG6,
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// `name.scenario<TAB>description` lines.
pub fn manifest() -> String {
    FIXTURES
        .iter()
        .map(|f| format!("{}\t{}\n", f.file_name(), f.shows))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for f in FIXTURES {
            let sc = f.scenario().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert!(sc.input.is_some(), "{}", f.name);
        }
        assert_eq!(manifest().lines().count(), FIXTURES.len());
    }

    #[test]
    fn shared_world_block_matches_macro() {
        assert!(fixture("fig1").unwrap().text.ends_with(EIGHT_WORLDS));
    }

    #[test]
    fn priors_render_as_given() {
        let p = |n: &str| {
            let sc = fixture(n).unwrap().scenario().unwrap();
            sc.prior.render(&sc.universe)
        };
        assert_eq!(p("fig1"), "8 < 7 < 6 < 4,5 < 1,2,3");
        assert_eq!(p("example1"), "x,y < z,w");
        assert_eq!(p("example2"), "w < x,y < z");
        assert_eq!(p("prop1"), "z < w,x,y");
    }
}
