//! Sequence and surface CSV files.
//!
//! A sequence file starts with an optional `# format=iq` or `# format=phase`
//! line, then a header (`re,im` or `phase`) and one row per entry. Phases are
//! in radians. Surfaces are written as `tau,nu,abs_sq`.

use std::io::{Read, Write};

use aflaz_core::{AfSurface, Complex64, Sequence};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqFormat {
    Iq,
    Phase,
}

impl SeqFormat {
    fn header(self) -> &'static [&'static str] {
        match self {
            SeqFormat::Iq => &["re", "im"],
            SeqFormat::Phase => &["phase"],
        }
    }
}

fn parse_err(path: &str, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.into(),
        line,
        msg: msg.into(),
    }
}

/// Parses a sequence file. `path` only labels error messages.
pub fn read_sequence(mut r: impl Read, path: &str) -> Result<Sequence> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut declared = None;
    let mut body_start = 0;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            let rest = rest.trim();
            match rest.strip_prefix("format=").map(str::trim) {
                Some("iq") => declared = Some(SeqFormat::Iq),
                Some("phase") => declared = Some(SeqFormat::Phase),
                Some(other) => {
                    return Err(parse_err(path, i + 1, format!("unknown format {other:?}")))
                }
                None => {}
            }
            continue;
        }
        body_start = i;
        break;
    }
    let body: String = text.lines().skip(body_start).collect::<Vec<_>>().join("\n");
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_ascii_lowercase).collect();
    let format = match header
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .as_slice()
    {
        ["re", "im"] => SeqFormat::Iq,
        ["phase"] => SeqFormat::Phase,
        _ => {
            return Err(parse_err(
                path,
                body_start + 1,
                "header must be `re,im` or `phase`",
            ))
        }
    };
    if declared.is_some_and(|d| d != format) {
        return Err(parse_err(
            path,
            body_start + 1,
            "header disagrees with the format line",
        ));
    }
    let mut entries = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = body_start + k + 2;
        let num = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| parse_err(path, line, "missing field"))?
                .parse::<f64>()
                .map_err(|e| parse_err(path, line, e.to_string()))
        };
        entries.push(match format {
            SeqFormat::Iq => Complex64::new(num(0)?, num(1)?),
            SeqFormat::Phase => Complex64::from_polar(1.0, num(0)?),
        });
    }
    Ok(Sequence::new(entries)?)
}

pub fn read_sequence_file(path: &std::path::Path) -> Result<Sequence> {
    let f = std::fs::File::open(path)?;
    read_sequence(std::io::BufReader::new(f), &path.display().to_string())
}

pub fn write_sequence(w: impl Write, seq: &Sequence, format: SeqFormat) -> Result<()> {
    let mut w = w;
    writeln!(
        w,
        "# format={}",
        match format {
            SeqFormat::Iq => "iq",
            SeqFormat::Phase => "phase",
        }
    )?;
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(format.header())?;
    for z in seq.entries() {
        match format {
            SeqFormat::Iq => wtr.write_record([z.re.to_string(), z.im.to_string()])?,
            SeqFormat::Phase => wtr.write_record([z.arg().to_string()])?,
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_surface(w: impl Write, surface: &AfSurface) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["tau", "nu", "abs_sq"])?;
    for (tau, nu, v) in surface.iter() {
        wtr.write_record([tau.to_string(), nu.to_string(), v.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}
