use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use hdc_core::{BinaryStringSet, CostBudget, Instance, InstanceDraft, PExponent};

pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn parse_p(text: &str, allow_one: bool) -> Result<PExponent> {
    PExponent::parse_with(text, allow_one).with_context(|| format!("invalid exponent {text:?}"))
}

/// Strings, exponent and optional budget from a text or JSON instance file.
pub fn load(path: &Path, p: Option<&str>, allow_p_one: bool) -> Result<(BinaryStringSet, PExponent, Option<CostBudget>)> {
    let text = read_input(path)?;
    let p = p.map(|s| parse_p(s, allow_p_one)).transpose()?;
    let name = path.display();
    if text.trim_start().starts_with('{') {
        let inst = Instance::from_json(&text).with_context(|| format!("{name}"))?;
        if let Some(q) = p {
            anyhow::ensure!(q == inst.p, "{name}: the file uses p = {} but p = {q} was requested", inst.p);
        }
        return Ok((inst.set, inst.p, Some(inst.budget)));
    }
    let draft = InstanceDraft::parse(&text, allow_p_one).with_context(|| format!("{name}"))?;
    draft.resolve(p).with_context(|| format!("{name}"))
}
