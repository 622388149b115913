use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::{LawFit, TrialRecord};
use crate::error::{Error, Result};

const RECORD_HEADER: [&str; 8] = ["family", "n", "m", "kappa", "alpha", "iterations", "converged", "seed"];
const FIT_HEADER: [&str; 4] = ["law", "mean_dev", "max_abs_dev", "trials"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

// The header is written by hand so an empty list still yields a header line.
fn write_csv<T: Serialize, W: Write>(header: &[&str], rows: &[T], w: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wtr.write_record(header)?;
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn read_csv<T: DeserializeOwned, R: Read>(header: &[&str], r: R) -> Result<Vec<T>> {
    let mut rdr = csv::Reader::from_reader(r);
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unexpected header {found:?}"),
        });
    }
    rdr.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn write_records_csv<W: Write>(records: &[TrialRecord], w: W) -> Result<()> {
    write_csv(&RECORD_HEADER, records, w)
}

pub fn read_records_csv<R: Read>(r: R) -> Result<Vec<TrialRecord>> {
    read_csv(&RECORD_HEADER, r)
}

pub fn write_fits_csv<W: Write>(fits: &[LawFit], w: W) -> Result<()> {
    write_csv(&FIT_HEADER, fits, w)
}

pub fn read_fits_csv<R: Read>(r: R) -> Result<Vec<LawFit>> {
    read_csv(&FIT_HEADER, r)
}

pub fn write_records_json<W: Write>(records: &[TrialRecord], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, records)?;
    writeln!(w).map_err(|e| Error::Json(serde_json::Error::io(e)))
}

pub fn write_fits_json<W: Write>(fits: &[LawFit], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, fits)?;
    writeln!(w).map_err(|e| Error::Json(serde_json::Error::io(e)))
}

fn save_with(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).map_err(|e| match e {
        Error::Csv(err) if matches!(err.kind(), csv::ErrorKind::Io(_)) => match err.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        },
        other => other,
    })?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn save_records(path: impl AsRef<Path>, records: &[TrialRecord], format: OutputFormat) -> Result<()> {
    save_with(path.as_ref(), |w| match format {
        OutputFormat::Csv => write_records_csv(records, w),
        OutputFormat::Json => write_records_json(records, w),
    })
}

pub fn save_fits(path: impl AsRef<Path>, fits: &[LawFit], format: OutputFormat) -> Result<()> {
    save_with(path.as_ref(), |w| match format {
        OutputFormat::Csv => write_fits_csv(fits, w),
        OutputFormat::Json => write_fits_json(fits, w),
    })
}

pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<TrialRecord>> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    read_records_csv(f)
}

pub fn load_fits(path: impl AsRef<Path>) -> Result<Vec<LawFit>> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    read_fits_csv(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{Family, Law};
    use crate::scaling::ScaleFactorKind;
    use proptest::prelude::*;

    fn sample() -> TrialRecord {
        TrialRecord {
            family: Family::Mt,
            n: 16,
            m: 16,
            kappa: 64.0,
            scale_kind: ScaleFactorKind::GershgorinDiag,
            iterations: 10,
            converged: true,
            seed: 42,
        }
    }

    #[test]
    fn empty_list_is_header_only() {
        let mut out = Vec::new();
        write_records_csv(&[], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "family,n,m,kappa,alpha,iterations,converged,seed\n");
        let mut out = Vec::new();
        write_fits_csv(&[], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "law,mean_dev,max_abs_dev,trials\n");
    }

    #[test]
    fn one_record_is_two_lines() {
        let mut out = Vec::new();
        write_records_csv(&[sample()], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().nth(1).unwrap(), "mt,16,16,64.0,alpha2,10,true,42");
    }

    #[test]
    fn fits_round_trip() {
        let fits = vec![LawFit {
            law: Law::N2,
            mean_deviation: -0.125,
            max_abs_deviation: 1.5,
            trials: 40,
        }];
        let mut out = Vec::new();
        write_fits_csv(&fits, &mut out).unwrap();
        assert_eq!(String::from_utf8(out.clone()).unwrap().lines().nth(1).unwrap(), "N2,-0.125,1.5,40");
        assert_eq!(read_fits_csv(out.as_slice()).unwrap(), fits);
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(read_records_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn save_reports_path() {
        let err = save_records("/nonexistent-dir/x.csv", &[sample()], OutputFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"), "{err}");
    }

    #[test]
    fn json_mirrors_fields() {
        let mut out = Vec::new();
        write_records_json(&[sample()], &mut out).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v[0]["alpha"], "alpha2");
        assert_eq!(v[0]["family"], "mt");
        assert_eq!(v[0]["kappa"], 64.0);
    }

    fn record_strategy() -> impl Strategy<Value = TrialRecord> {
        (
            prop_oneof![Just(Family::Mt), Just(Family::Uniform)],
            2usize..300,
            1usize..64,
            1.0f64..1e12,
            prop_oneof![
                Just(ScaleFactorKind::Optimal),
                Just(ScaleFactorKind::Trace),
                Just(ScaleFactorKind::GershgorinDiag)
            ],
            0usize..200,
            any::<bool>(),
            any::<u64>(),
        )
            .prop_map(|(family, n, r, kappa, scale_kind, iterations, converged, seed)| TrialRecord {
                family,
                n,
                m: n * r,
                kappa,
                scale_kind,
                iterations,
                converged,
                seed,
            })
    }

    proptest! {
        #[test]
        fn records_round_trip(records in proptest::collection::vec(record_strategy(), 0..20)) {
            let mut out = Vec::new();
            write_records_csv(&records, &mut out).unwrap();
            prop_assert_eq!(read_records_csv(out.as_slice()).unwrap(), records);
        }
    }
}
