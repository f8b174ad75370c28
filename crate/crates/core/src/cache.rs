//! JSON-lines persistence for reduction summaries.
//!
//! The first line is a header carrying a signature of the ambient datum and
//! Frobenius; every further line is one memoized element of one engine
//! (the ambient group or a Levi), keyed by `(λ, canonical encoding of u)`.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::ExtAffineElement;
use crate::dl_reduction::{ClassPolynomial, Reducer, Summary};
use crate::error::{Error, Result};
use crate::newton_kottwitz::{KottwitzPoint, NewtonPoint, SigmaClass};
use crate::root_datum::WeylElement;

const FORMAT: &str = "alcove-newton-cache";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    signature: String,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Key {
    lambda: Vec<i64>,
    u: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    engine: String,
    key: Key,
    length: usize,
    leaves: Vec<(NewtonPoint, KottwitzPoint)>,
    polys: Vec<ClassPolynomial>,
    dims: Vec<i64>,
}

/// Identifies the ambient datum and Frobenius; caches only load into
/// engines with a matching signature.
pub fn signature(reducer: &Reducer) -> String {
    let g = reducer.group();
    let d = g.datum();
    format!(
        "type={};coroots={:?};roots={:?};delta={:?}",
        d.type_name(),
        d.simple_coroots(),
        (0..d.rank()).map(|i| d.simple_root(i).to_vec()).collect::<Vec<_>>(),
        g.frobenius().delta().lattice_map()
    )
}

/// Writes all memoized summaries of `engines` (id, reducer) in a stable order.
pub fn save(path: &Path, signature: &str, engines: &[(String, &Reducer)]) -> Result<usize> {
    let mut out = BufWriter::new(File::create(path)?);
    let header = Header { format: FORMAT.into(), version: VERSION, signature: signature.into() };
    writeln!(out, "{}", serde_json::to_string(&header)?)?;
    let mut count = 0;
    for (id, reducer) in engines {
        let datum = reducer.group().datum();
        for (x, s) in reducer.entries() {
            let record = Record {
                engine: id.clone(),
                key: Key { lambda: x.lambda().to_vec(), u: datum.canonical_encoding(x.finite_part()) },
                length: s.length,
                leaves: s.polys.keys().map(|c| (c.nu.clone(), c.kappa.clone())).collect(),
                polys: s.polys.values().cloned().collect(),
                dims: s.polys.keys().map(|c| s.dims.get(c).copied().unwrap_or(i64::MIN)).collect(),
            };
            writeln!(out, "{}", serde_json::to_string(&record)?)?;
            count += 1;
        }
    }
    out.flush()?;
    Ok(count)
}

/// Loads records into the matching engines; returns the number loaded.
pub fn load(path: &Path, signature: &str, engines: &[(String, &Reducer)]) -> Result<usize> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header: Header = match lines.next() {
        Some(line) => serde_json::from_str(&line?)?,
        None => return Err(Error::Cache("empty cache file".into())),
    };
    if header.format != FORMAT || header.version != VERSION {
        return Err(Error::Cache(format!("unsupported cache format {} v{}", header.format, header.version)));
    }
    if header.signature != signature {
        return Err(Error::Cache("cache was written for a different root datum or Frobenius".into()));
    }
    let by_id: HashMap<&str, &Reducer> = engines.iter().map(|(id, r)| (id.as_str(), *r)).collect();
    let mut decoders: HashMap<&str, HashMap<Vec<i64>, WeylElement>> = HashMap::new();
    let mut count = 0;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line)?;
        let (&id, reducer) = by_id
            .get_key_value(record.engine.as_str())
            .ok_or_else(|| Error::Cache(format!("unknown engine {:?}", record.engine)))?;
        let datum = reducer.group().datum();
        let decode = decoders.entry(id).or_insert_with(|| {
            datum.weyl().elements().map(|w| (datum.canonical_encoding(w), w)).collect()
        });
        let u = *decode
            .get(&record.key.u)
            .ok_or_else(|| Error::Cache(format!("bad Weyl encoding {:?}", record.key.u)))?;
        if record.polys.len() != record.leaves.len() || record.dims.len() != record.leaves.len() {
            return Err(Error::Cache("record arrays have different lengths".into()));
        }
        let scope = reducer.sigma_group().scope().clone();
        let mut polys = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for (((nu, kappa), f), d) in record.leaves.into_iter().zip(record.polys).zip(record.dims) {
            let class = SigmaClass { nu, kappa, scope: scope.clone() };
            if d != i64::MIN {
                dims.insert(class.clone(), d);
            }
            polys.insert(class, f);
        }
        reducer.insert(ExtAffineElement::new(record.key.lambda, u), Summary { length: record.length, polys, dims });
        count += 1;
    }
    Ok(count)
}
