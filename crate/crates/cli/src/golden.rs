//! Golden fixtures: canonical command outputs stored byte-for-byte.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::commands::{execute, Cli, CliError};

/// A fixture file and the command line that produces it.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub file: &'static str,
    pub args: &'static [&'static str],
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { file: "char_k_x_2.txt", args: &["char", "pd(2; 1)"] },
    Fixture { file: "char_k_x_3.txt", args: &["char", "pd(3; 1)"] },
    Fixture { file: "char_k_x_4.txt", args: &["char", "pd(4; 1)"] },
    Fixture { file: "char_k_x_5.txt", args: &["char", "pd(5; 1)"] },
    Fixture { file: "verify_paper_n4.json", args: &["verify-paper", "--nmax", "4", "--json"] },
    Fixture { file: "verify_paper_n8.json", args: &["verify-paper", "--nmax", "8", "--json"] },
];

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// Output and exit code of `weylkit <args>`, computed in-process.
pub fn render(args: &[&str]) -> (String, i32) {
    let cli =
        Cli::try_parse_from(std::iter::once("weylkit").chain(args.iter().copied())).expect("fixture arguments parse");
    let (out, _, code) = execute(&cli);
    (out, code)
}

/// First line where two texts differ, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub line: usize,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Option<String>| s.as_deref().map_or("<end of file>".to_string(), |l| format!("`{l}`"));
        write!(f, "line {}: expected {}, got {}", self.line, show(&self.expected), show(&self.actual))
    }
}

pub fn first_difference(expected: &str, actual: &str) -> Option<Mismatch> {
    if expected == actual {
        return None;
    }
    let (mut e, mut a) = (expected.split_inclusive('\n'), actual.split_inclusive('\n'));
    let mut line = 1;
    loop {
        match (e.next(), a.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            (x, y) => {
                return Some(
                    Mismatch { line, expected: x.map(str::to_string), actual: y.map(str::to_string) }.trimmed(),
                )
            }
        }
    }
}

impl Mismatch {
    fn trimmed(mut self) -> Self {
        for s in [&mut self.expected, &mut self.actual].into_iter().flatten() {
            *s = s.trim_end_matches('\n').to_string();
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenOutcome {
    /// Each fixture with its first mismatch, if any.
    pub files: Vec<(String, Option<Mismatch>)>,
}

impl GoldenOutcome {
    pub fn passed(&self) -> bool {
        self.files.iter().all(|(_, m)| m.is_none())
    }
}

pub fn check_fixture(dir: &Path, fixture: &Fixture) -> Result<Option<Mismatch>, CliError> {
    let path = dir.join(fixture.file);
    let expected = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let (actual, code) = render(fixture.args);
    if code != 0 {
        return Ok(Some(Mismatch {
            line: 0,
            expected: Some("exit code 0".into()),
            actual: Some(format!("exit code {code}")),
        }));
    }
    Ok(first_difference(&expected, &actual))
}

pub fn golden_check(dir: &Path) -> Result<GoldenOutcome, CliError> {
    let files = FIXTURES
        .iter()
        .map(|fx| Ok((fx.file.to_string(), check_fixture(dir, fx)?)))
        .collect::<Result<_, CliError>>()?;
    Ok(GoldenOutcome { files })
}

pub fn bless(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for fx in FIXTURES {
        let (out, _) = render(fx.args);
        let path = dir.join(fx.file);
        fs::write(&path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differences() {
        assert_eq!(first_difference("a\nb\n", "a\nb\n"), None);
        let m = first_difference("a\nb\nc\n", "a\nx\nc\n").unwrap();
        assert_eq!((m.line, m.expected.as_deref(), m.actual.as_deref()), (2, Some("b"), Some("x")));
        let m = first_difference("a\n", "a\nextra\n").unwrap();
        assert_eq!(m.to_string(), "line 2: expected <end of file>, got `extra`");
        assert_eq!(first_difference("a\n", "a").unwrap().line, 1);
    }
}
