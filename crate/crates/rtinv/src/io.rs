//! Text formats: theory and manifold specification strings, link files,
//! serialized category tables, result records, and the on-disk cache.
//!
//! All floating point values are written with 17 significant digits so that
//! serialization round-trips are lossless, and all layouts are line oriented
//! and deterministic.

use crate::coset;
use crate::error::Error;
use crate::invariant::{TauResult, TheorySpec};
use crate::modular::ModularData;
use crate::surgery::{BraidWord, FramedLink, SurgeryPresentation};
use crate::{affine, u1, Complex};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::PathBuf;

/// Environment variable naming the cache directory.  Unset means no cache.
pub const CACHE_DIR_ENV: &str = "RTINV_CACHE_DIR";

/// Bump when the serialized table layout changes, so stale cache entries
/// can never be returned for a new layout.
const CACHE_FORMAT_VERSION: &str = "1";

/// A float with 17 significant digits (lossless for f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parse back what [`fmt_f64`] wrote (or any float literal).
pub fn parse_f64(s: &str) -> Result<f64, Error> {
    s.parse::<f64>().map_err(|_| Error::Parse(format!("bad float '{s}'")))
}

// ---------------------------------------------------------------------------
// Specification strings
// ---------------------------------------------------------------------------

/// Split `key=value` fields and check the exact expected key set, in order.
fn fields<'a>(spec: &'a str, body: &'a str, keys: &[&str]) -> Result<Vec<i64>, Error> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != keys.len() {
        return Err(Error::Parse(format!(
            "'{spec}': expected {} fields ({}), got {}",
            keys.len(),
            keys.join(","),
            parts.len()
        )));
    }
    let mut out = Vec::with_capacity(keys.len());
    for (i, (part, key)) in parts.iter().zip(keys).enumerate() {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("'{spec}': field {} is not key=value", i + 1)))?;
        if k != *key {
            return Err(Error::Parse(format!(
                "'{spec}': field {} should be '{key}', found '{k}'",
                i + 1
            )));
        }
        out.push(
            v.parse::<i64>()
                .map_err(|_| Error::Parse(format!("'{spec}': bad integer '{v}' for '{key}'")))?,
        );
    }
    Ok(out)
}

/// Parse a theory specification string, e.g. `su:N=2,k=3` or
/// `parafermion:k=2`.
pub fn parse_theory(spec: &str) -> Result<TheorySpec, Error> {
    let (family, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("'{spec}': missing ':' after the family name")))?;
    let nonneg = |v: i64| -> Result<u32, Error> {
        u32::try_from(v).map_err(|_| Error::Parse(format!("'{spec}': negative parameter")))
    };
    let rank = |v: i64| -> Result<usize, Error> {
        usize::try_from(v).map_err(|_| Error::Parse(format!("'{spec}': negative rank")))
    };
    match family {
        "su" => {
            let f = fields(spec, body, &["N", "k"])?;
            Ok(TheorySpec::Su { n: rank(f[0])?, k: nonneg(f[1])? })
        }
        "u1" => {
            let f = fields(spec, body, &["k"])?;
            Ok(TheorySpec::U1 { k: nonneg(f[0])? })
        }
        "parafermion" => {
            let f = fields(spec, body, &["k"])?;
            Ok(TheorySpec::Parafermion { k: nonneg(f[0])? })
        }
        "diagonal" => {
            let f = fields(spec, body, &["N", "m1", "m2"])?;
            Ok(TheorySpec::Diagonal { n: rank(f[0])?, m1: nonneg(f[1])?, m2: nonneg(f[2])? })
        }
        "extension" => {
            let f = fields(spec, body, &["N", "k", "m"])?;
            Ok(TheorySpec::Extension { n: rank(f[0])?, k: nonneg(f[1])?, m: nonneg(f[2])? })
        }
        "psu" => {
            let f = fields(spec, body, &["m", "n"])?;
            Ok(TheorySpec::Psu { m: rank(f[0])?, n: nonneg(f[1])? })
        }
        other => Err(Error::Parse(format!("'{spec}': unknown theory family '{other}'"))),
    }
}

/// Parse a manifold specification: `lens:p,q`, `chain:a1,a2,...` or
/// `link:<path>` (the path is read from disk).
pub fn parse_manifold(spec: &str) -> Result<SurgeryPresentation, Error> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("'{spec}': missing ':' after the manifold kind")))?;
    match kind {
        "lens" => {
            let nums: Vec<i64> = body
                .split(',')
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("'{spec}': bad integer '{t}'")))
                })
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(Error::Parse(format!("'{spec}': lens needs exactly p,q")));
            }
            SurgeryPresentation::lens(nums[0], nums[1])
        }
        "chain" => {
            let framings: Vec<i64> = body
                .split(',')
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("'{spec}': bad framing '{t}'")))
                })
                .collect::<Result<_, _>>()?;
            Ok(SurgeryPresentation::chains(vec![framings]))
        }
        "link" => {
            let text = std::fs::read_to_string(body)?;
            Ok(SurgeryPresentation::Link(parse_link_file(&text)?))
        }
        other => Err(Error::Parse(format!("'{spec}': unknown manifold kind '{other}'"))),
    }
}

// ---------------------------------------------------------------------------
// Link files
// ---------------------------------------------------------------------------

/// Parse a braid-closure link file.  The format is line oriented:
///
/// ```text
/// # optional comments
/// strands 2
/// word 1 1 1
/// components 0
/// framings 2
/// ```
///
/// `word` lists signed generator indices, `components` gives the component
/// id of each closure cycle in canonical cycle order, and `framings` one
/// framing per component.
pub fn parse_link_file(text: &str) -> Result<FramedLink, Error> {
    let mut strands: Option<usize> = None;
    let mut word: Option<Vec<i32>> = None;
    let mut components: Option<Vec<usize>> = None;
    let mut framings: Option<Vec<i64>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let key = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        let ints = |what: &str| -> Result<Vec<i64>, Error> {
            rest.iter()
                .map(|t| {
                    t.parse::<i64>().map_err(|_| {
                        Error::Parse(format!("line {}: bad {what} '{t}'", lineno + 1))
                    })
                })
                .collect()
        };
        match key {
            "strands" => {
                let v = ints("strand count")?;
                if v.len() != 1 || v[0] < 1 {
                    return Err(Error::Parse(format!(
                        "line {}: strands takes one positive integer",
                        lineno + 1
                    )));
                }
                strands = Some(v[0] as usize);
            }
            "word" => word = Some(ints("braid letter")?.iter().map(|&x| x as i32).collect()),
            "components" => {
                components = Some(ints("component id")?.iter().map(|&x| x as usize).collect())
            }
            "framings" => framings = Some(ints("framing")?),
            other => {
                return Err(Error::Parse(format!("line {}: unknown key '{other}'", lineno + 1)))
            }
        }
    }
    let strands = strands.ok_or_else(|| Error::Parse("missing 'strands' line".into()))?;
    let word = word.ok_or_else(|| Error::Parse("missing 'word' line".into()))?;
    let components = components.ok_or_else(|| Error::Parse("missing 'components' line".into()))?;
    let framings = framings.ok_or_else(|| Error::Parse("missing 'framings' line".into()))?;
    let braid = BraidWord::new(strands, word)?;
    FramedLink::new(braid, components, framings)
}

/// Serialize a link back into the file format; round-trips through
/// [`parse_link_file`] exactly.
pub fn write_link_file(link: &FramedLink) -> String {
    let join = |v: Vec<String>| v.join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "strands {}", link.braid.strands);
    let _ = writeln!(
        out,
        "word {}",
        join(link.braid.letters.iter().map(|l| l.to_string()).collect())
    );
    let _ = writeln!(
        out,
        "components {}",
        join(link.components.iter().map(|c| c.to_string()).collect())
    );
    let _ = writeln!(
        out,
        "framings {}",
        join(link.framings.iter().map(|f| f.to_string()).collect())
    );
    out
}

// ---------------------------------------------------------------------------
// Category tables
// ---------------------------------------------------------------------------

fn fmt_complex(z: Complex) -> String {
    format!("{} {}", fmt_f64(z.re), fmt_f64(z.im))
}

/// Serialize full modular data: labels, S, T, dims, twists, fusion, rank,
/// anomaly and central charge, in a line-oriented layout.
pub fn serialize_modular(md: &ModularData) -> String {
    let n = md.len();
    let mut out = String::new();
    let _ = writeln!(out, "modular {}", md.name);
    let _ = writeln!(out, "rank {}", fmt_f64(md.rank));
    let _ = writeln!(out, "anomaly {}", fmt_complex(md.anomaly));
    let _ = writeln!(out, "central_charge {}", fmt_f64(md.central_charge));
    let _ = writeln!(out, "labels {n}");
    for l in &md.labels {
        let _ = writeln!(out, "  {l}");
    }
    let _ = writeln!(out, "dims");
    for &d in &md.dims {
        let _ = writeln!(out, "  {}", fmt_f64(d));
    }
    let _ = writeln!(out, "twists");
    for &w in &md.twists {
        let _ = writeln!(out, "  {}", fmt_complex(w));
    }
    let _ = writeln!(out, "t_diag");
    for &t in &md.t_diag {
        let _ = writeln!(out, "  {}", fmt_complex(t));
    }
    let _ = writeln!(out, "s");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_complex(md.s[(i, j)])).collect();
        let _ = writeln!(out, "  {}", row.join("  "));
    }
    let _ = writeln!(out, "fusion");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = md.fusion.get(i, j, k);
                if v != 0 {
                    let _ = writeln!(out, "  {i} {j} {k} {v}");
                }
            }
        }
    }
    let _ = writeln!(out, "end");
    out
}

/// Parse serialized modular data back; used to verify lossless round-trips.
/// The result is rebuilt through the validating constructor, so a tampered
/// table fails loudly.
pub fn parse_modular(text: &str) -> Result<ModularData, Error> {
    let lines: Vec<&str> = text.lines().collect();
    let mut pos = 0usize;
    let next = |pos: &mut usize| -> Result<&str, Error> {
        let line = lines.get(*pos).ok_or_else(|| Error::Parse("truncated table".into()))?;
        *pos += 1;
        Ok(line)
    };
    let name = next(&mut pos)?
        .strip_prefix("modular ")
        .ok_or_else(|| Error::Parse("missing 'modular' header".into()))?
        .to_string();
    let section = |pos: &mut usize, prefix: &str| -> Result<String, Error> {
        let line = next(pos)?;
        line.strip_prefix(prefix)
            .map(|s| s.trim().to_string())
            .ok_or_else(|| Error::Parse(format!("expected '{prefix}', found '{line}'")))
    };
    let _rank = section(&mut pos, "rank ")?;
    let _anomaly = section(&mut pos, "anomaly ")?;
    let c = parse_f64(&section(&mut pos, "central_charge ")?)?;
    let n: usize = section(&mut pos, "labels ")?
        .parse()
        .map_err(|_| Error::Parse("bad label count".into()))?;
    let take = |pos: &mut usize, count: usize| -> Result<Vec<String>, Error> {
        let mut v = Vec::with_capacity(count);
        for _ in 0..count {
            let line =
                lines.get(*pos).ok_or_else(|| Error::Parse("truncated table".into()))?;
            *pos += 1;
            v.push(line.trim().to_string());
        }
        Ok(v)
    };
    let labels = take(&mut pos, n)?;
    let complex_of = |s: &str| -> Result<Complex, Error> {
        let (re, im) = s
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad complex '{s}'")))?;
        Ok(Complex::new(parse_f64(re.trim())?, parse_f64(im.trim())?))
    };
    let tag = |pos: &mut usize, tag: &str| -> Result<(), Error> {
        let line = lines.get(*pos).ok_or_else(|| Error::Parse(format!("missing '{tag}'")))?;
        *pos += 1;
        if line.trim() != tag {
            return Err(Error::Parse(format!("expected '{tag}', found '{line}'")));
        }
        Ok(())
    };
    tag(&mut pos, "dims")?;
    let _dims = take(&mut pos, n)?;
    tag(&mut pos, "twists")?;
    let twists: Vec<Complex> =
        take(&mut pos, n)?.iter().map(|s| complex_of(s)).collect::<Result<_, _>>()?;
    tag(&mut pos, "t_diag")?;
    let _t = take(&mut pos, n)?;
    tag(&mut pos, "s")?;
    let mut s = crate::modular::CMatrix::zeros(n);
    for (i, row) in take(&mut pos, n)?.iter().enumerate() {
        let cells: Vec<&str> = row.split("  ").collect();
        if cells.len() != n {
            return Err(Error::Parse(format!("S row {i} has {} cells", cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            s[(i, j)] = complex_of(cell.trim())?;
        }
    }
    tag(&mut pos, "fusion")?;
    while let Some(line) = lines.get(pos) {
        pos += 1;
        let line = line.trim();
        if line == "end" {
            return ModularData::from_s_and_twists(name, labels, s, twists, c);
        }
        // Fusion entries are re-derived from S; just validate the shape.
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::Parse(format!("bad fusion line '{line}'")));
        }
    }
    Err(Error::Parse("missing 'end'".into()))
}

/// Serialize a coset/extension sector catalog: one line per sector record
/// with dimension, twist, orbit length and piece count.
fn serialize_sectors(
    name: &str,
    rank: f64,
    anomaly: Complex,
    c: f64,
    mu: f64,
    rows: &[(String, f64, Complex, usize, usize)],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sectors {name}");
    let _ = writeln!(out, "rank {}", fmt_f64(rank));
    let _ = writeln!(out, "anomaly {}", fmt_complex(anomaly));
    let _ = writeln!(out, "central_charge {}", fmt_f64(c));
    let _ = writeln!(out, "mu {}", fmt_f64(mu));
    let _ = writeln!(out, "count {}", rows.len());
    for (label, dim, twist, orbit, pieces) in rows {
        let _ = writeln!(
            out,
            "  {label} dim {} twist {} orbit {orbit} pieces {pieces}",
            fmt_f64(*dim),
            fmt_complex(*twist)
        );
    }
    let _ = writeln!(out, "end");
    out
}

/// Build the theory named by `spec` and serialize its tables.
pub fn serialize_theory(spec: &TheorySpec) -> Result<String, Error> {
    match *spec {
        TheorySpec::Su { n, k } => Ok(serialize_modular(&affine::theory(n, k)?.md)),
        TheorySpec::U1 { k } => Ok(serialize_modular(&u1::theory(k)?)),
        TheorySpec::Parafermion { k } => {
            let t = coset::parafermion_sectors(k)?;
            let rows: Vec<_> = t
                .classes
                .iter()
                .enumerate()
                .map(|(i, &(m, alpha))| {
                    (format!("({m},{alpha})"), t.dims[i], t.twists[i], 1, 1)
                })
                .collect();
            Ok(serialize_sectors(
                &spec.to_string(),
                t.rank,
                t.anomaly,
                t.central_charge,
                t.mu,
                &rows,
            ))
        }
        TheorySpec::Diagonal { n, m1, m2 } => {
            let t = coset::diagonal_sectors(n, m1, m2)?;
            let rows: Vec<_> = t
                .orbits
                .iter()
                .map(|o| {
                    (
                        format!("{}|{}|{}", o.rep[0], o.rep[1], o.rep[2]),
                        o.piece_dim,
                        o.twist,
                        o.orbit_length,
                        o.pieces,
                    )
                })
                .collect();
            Ok(serialize_sectors(
                &spec.to_string(),
                t.rank,
                t.anomaly,
                t.central_charge,
                t.mu,
                &rows,
            ))
        }
        TheorySpec::Extension { n, k, m } => {
            let t = coset::extension_orbits(n, k, m)?;
            let rows: Vec<_> = t
                .orbits
                .iter()
                .map(|o| {
                    (o.rep.to_string(), o.piece_dim, o.twist, o.orbit_length, o.pieces)
                })
                .collect();
            Ok(serialize_sectors(
                &spec.to_string(),
                t.rank,
                t.anomaly,
                t.central_charge,
                t.mu,
                &rows,
            ))
        }
        TheorySpec::Psu { m, n } => {
            // The restricted invariant has no separate table; serialize the
            // ambient theory it restricts.
            Ok(serialize_modular(&affine::theory(m, n)?.md))
        }
    }
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

/// Cache file path for a theory, if a cache directory is configured.
pub fn cache_path(spec: &TheorySpec) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    let mut hasher = Sha256::new();
    hasher.update(CACHE_FORMAT_VERSION.as_bytes());
    hasher.update(b"\n");
    hasher.update(spec.to_string().as_bytes());
    let digest = hasher.finalize();
    let mut name = String::with_capacity(68);
    for b in digest {
        let _ = write!(name, "{b:02x}");
    }
    name.push_str(".txt");
    Some(PathBuf::from(dir).join(name))
}

/// Serialize a theory's tables, consulting the content-addressed cache.  A
/// hit returns the cached bytes unchanged; a miss computes, stores and
/// returns them.  The boolean reports whether the cache was hit.
pub fn cached_theory_data(spec: &TheorySpec) -> Result<(String, bool), Error> {
    let path = cache_path(spec);
    if let Some(p) = &path {
        if p.exists() {
            return Ok((std::fs::read_to_string(p)?, true));
        }
    }
    let text = serialize_theory(spec)?;
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(p, &text)?;
    }
    Ok((text, false))
}

// ---------------------------------------------------------------------------
// Result records
// ---------------------------------------------------------------------------

/// One invariant evaluation, formatted deterministically (apart from the
/// wall time field) and machine parsable.
#[derive(Debug, Clone)]
pub struct ResultRecord {
    /// Canonical theory string.
    pub theory: String,
    /// Manifold string as given.
    pub manifold: String,
    /// The evaluation.
    pub tau: TauResult,
    /// Wall time in milliseconds.
    pub wall_ms: f64,
}

impl std::fmt::Display for ResultRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "theory={} manifold={} value={:.12e} {:.12e} b_plus={} b_minus={} colorings={} wall_ms={:.1}",
            self.theory,
            self.manifold,
            self.tau.value.re,
            self.tau.value.im,
            self.tau.b_plus,
            self.tau.b_minus,
            self.tau.colorings,
            self.wall_ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theory_strings_round_trip() {
        for s in [
            "su:N=2,k=3",
            "u1:k=4",
            "parafermion:k=2",
            "diagonal:N=2,m1=1,m2=1",
            "extension:N=2,k=4,m=2",
            "psu:m=2,n=3",
        ] {
            let spec = parse_theory(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(parse_theory("su:k=3,N=2").is_err());
        assert!(parse_theory("su:N=2").is_err());
        assert!(parse_theory("tqft:N=2,k=3").is_err());
        assert!(parse_theory("u1:k=x").is_err());
    }

    #[test]
    fn manifold_strings_parse() {
        assert_eq!(parse_manifold("lens:1,1").unwrap(), SurgeryPresentation::sphere());
        assert_eq!(
            parse_manifold("chain:2,-3,4").unwrap(),
            SurgeryPresentation::chains(vec![vec![2, -3, 4]])
        );
        assert!(parse_manifold("lens:5").is_err());
        assert!(parse_manifold("torus:1").is_err());
    }

    #[test]
    fn link_file_round_trip() {
        let text = "# trefoil with framing 2\nstrands 2\nword 1 1 1\ncomponents 0\nframings 2\n";
        let link = parse_link_file(text).unwrap();
        assert_eq!(link.n_components(), 1);
        assert_eq!(link.framings, vec![2]);
        let written = write_link_file(&link);
        let reparsed = parse_link_file(&written).unwrap();
        assert_eq!(link, reparsed);
        assert_eq!(written, write_link_file(&reparsed));
    }

    #[test]
    fn modular_table_round_trip_is_lossless() {
        for spec in [TheorySpec::Su { n: 2, k: 3 }, TheorySpec::U1 { k: 2 }] {
            let text = serialize_theory(&spec).unwrap();
            let md = parse_modular(&text).unwrap();
            assert_eq!(serialize_modular(&md), text);
        }
    }

    #[test]
    fn cache_hits_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        // Env mutation is process-global; this is the only test touching it.
        std::env::set_var(CACHE_DIR_ENV, dir.path());
        let spec = TheorySpec::Parafermion { k: 3 };
        let (fresh, hit1) = cached_theory_data(&spec).unwrap();
        let (cached, hit2) = cached_theory_data(&spec).unwrap();
        std::env::remove_var(CACHE_DIR_ENV);
        assert!(!hit1);
        assert!(hit2);
        assert_eq!(fresh, cached);
        assert_eq!(fresh, serialize_theory(&spec).unwrap());
    }

    #[test]
    fn result_record_formatting() {
        let rec = ResultRecord {
            theory: "su:N=2,k=1".into(),
            manifold: "lens:2,1".into(),
            tau: TauResult {
                value: Complex::new(0.0, 0.0),
                b_plus: 1,
                b_minus: 0,
                colorings: 2,
            },
            wall_ms: 0.0,
        };
        let line = rec.to_string();
        assert!(line.starts_with("theory=su:N=2,k=1 manifold=lens:2,1 value="));
        assert!(line.contains("b_plus=1 b_minus=0 colorings=2"));
    }
}
