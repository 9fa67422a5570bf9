use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Corpus, RawDocument, TextNormalizer};
use crate::error::{Error, Result};

const COLUMNS: [&str; 7] = [
    "id",
    "title",
    "author",
    "country",
    "university",
    "year",
    "text",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    #[default]
    Csv,
    Tsv,
    Jsonl,
}

impl std::fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CorpusFormat::Csv => "csv",
            CorpusFormat::Tsv => "tsv",
            CorpusFormat::Jsonl => "jsonl",
        })
    }
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(CorpusFormat::Csv),
            "tsv" => Ok(CorpusFormat::Tsv),
            "jsonl" | "ndjson" => Ok(CorpusFormat::Jsonl),
            other => Err(Error::param(format!("unknown corpus format `{other}`"))),
        }
    }
}

/// Reads a corpus file and tokenizes every document with `normalizer`.
pub fn ingest_corpus(
    path: &Path,
    format: CorpusFormat,
    normalizer: &TextNormalizer,
) -> Result<Corpus> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        record: 0,
        message: format!("not valid UTF-8: {e}"),
    })?;
    let documents = parse_records(&text, format).map_err(|e| match e {
        RecordError::Format { record, message } => Error::Format {
            path: path.to_path_buf(),
            record,
            message,
        },
        RecordError::Other(e) => e,
    })?;
    Corpus::new(documents, normalizer)
}

/// Parses corpus text already held in memory.
pub fn parse_corpus(
    text: &str,
    format: CorpusFormat,
    normalizer: &TextNormalizer,
) -> Result<Corpus> {
    let documents = parse_records(text, format).map_err(|e| match e {
        RecordError::Format { record, message } => Error::Format {
            path: "<memory>".into(),
            record,
            message,
        },
        RecordError::Other(e) => e,
    })?;
    Corpus::new(documents, normalizer)
}

enum RecordError {
    Format { record: usize, message: String },
    Other(Error),
}

impl From<Error> for RecordError {
    fn from(e: Error) -> Self {
        RecordError::Other(e)
    }
}

fn parse_records(text: &str, format: CorpusFormat) -> Result<Vec<RawDocument>, RecordError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    match format {
        CorpusFormat::Csv => parse_delimited(text, b','),
        CorpusFormat::Tsv => parse_delimited(text, b'\t'),
        CorpusFormat::Jsonl => parse_jsonl(text),
    }
}

fn parse_year(record: usize, raw: &str) -> Result<i32, RecordError> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Err(Error::MissingField {
            record,
            field: "year".into(),
        }
        .into());
    }
    raw.parse::<i32>().map_err(|_| {
        Error::InvalidYear {
            record,
            value: raw.to_string(),
        }
        .into()
    })
}

fn build_document(record: usize, fields: [String; 7]) -> Result<RawDocument, RecordError> {
    let [id, title, author, country, university, year, text] = fields;
    if id.trim().is_empty() {
        return Err(Error::MissingField {
            record,
            field: "id".into(),
        }
        .into());
    }
    if text.trim().is_empty() {
        return Err(Error::MissingField {
            record,
            field: "text".into(),
        }
        .into());
    }
    let year = parse_year(record, &year)?;
    Ok(RawDocument {
        id: id.trim().to_string(),
        title,
        first_author: author,
        country,
        university,
        year,
        text,
    })
}

fn parse_delimited(text: &str, delimiter: u8) -> Result<Vec<RawDocument>, RecordError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| RecordError::Format {
            record: 0,
            message: format!("cannot read header: {e}"),
        })?
        .clone();
    let mut positions = [0usize; 7];
    for (slot, name) in positions.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h.trim().trim_start_matches('\u{feff}') == name)
            .ok_or_else(|| RecordError::Format {
                record: 0,
                message: format!("header lacks column `{name}`"),
            })?;
    }

    let mut docs = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let record = idx + 1;
        let row = row.map_err(|e| RecordError::Format {
            record,
            message: e.to_string(),
        })?;
        let fields = positions.map(|p| row.get(p).unwrap_or("").to_string());
        docs.push(build_document(record, fields)?);
    }
    Ok(docs)
}

fn json_field(
    record: usize,
    obj: &serde_json::Map<String, serde_json::Value>,
    name: &str,
) -> Result<String, RecordError> {
    match obj.get(name) {
        None | Some(serde_json::Value::Null) => Ok(String::new()),
        Some(serde_json::Value::String(s)) => Ok(s.clone()),
        Some(serde_json::Value::Number(n)) => Ok(n.to_string()),
        Some(other) => Err(RecordError::Format {
            record,
            message: format!("field `{name}` has unsupported JSON type: {other}"),
        }),
    }
}

fn parse_jsonl(text: &str) -> Result<Vec<RawDocument>, RecordError> {
    let mut docs = Vec::new();
    let mut record = 0;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        record += 1;
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| RecordError::Format {
                record,
                message: e.to_string(),
            })?;
        let obj = value.as_object().ok_or_else(|| RecordError::Format {
            record,
            message: "line is not a JSON object".into(),
        })?;
        for mandatory in ["id", "year", "text"] {
            if !obj.contains_key(mandatory) {
                return Err(Error::MissingField {
                    record,
                    field: mandatory.into(),
                }
                .into());
            }
        }
        let mut fields: [String; 7] = Default::default();
        for (slot, name) in fields.iter_mut().zip(COLUMNS) {
            *slot = json_field(record, obj, name)?;
        }
        docs.push(build_document(record, fields)?);
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "id,title,author,country,university,year,text\n";

    fn parse(text: &str, format: CorpusFormat) -> Result<Corpus> {
        parse_corpus(text, format, &TextNormalizer::identity())
    }

    #[test]
    fn three_record_csv() {
        let text = format!(
            "{HEADER}a,T1,Smith,US,MIT,2005,\"Brand equity, revisited\"\n\
             b,T2,Jones,NL,UvA,2006,Pricing models\n\
             c,T3,Lee,CA,UBC,2007,\"Said \"\"hello\"\"\"\n"
        );
        let c = parse(&text, CorpusFormat::Csv).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.documents()[0].text, "Brand equity, revisited");
        assert_eq!(c.documents()[2].text, "Said \"hello\"");
        assert_eq!(c.documents()[1].first_author, "Jones");
    }

    #[test]
    fn duplicate_id_names_offender() {
        let text = format!("{HEADER}a7,t,a,c,u,2005,x\nb,t,a,c,u,2005,y\na7,t,a,c,u,2006,z\n");
        match parse(&text, CorpusFormat::Csv).unwrap_err() {
            Error::DuplicateId(id) => assert_eq!(id, "a7"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn header_only_is_empty_corpus() {
        assert!(parse(HEADER, CorpusFormat::Csv).unwrap().is_empty());
        assert!(parse("", CorpusFormat::Jsonl).unwrap().is_empty());
    }

    #[test]
    fn missing_field_reports_record_number() {
        let text = format!("{HEADER}a,t,a,c,u,2005,x\n,t,a,c,u,2005,y\n");
        assert!(matches!(
            parse(&text, CorpusFormat::Csv).unwrap_err(),
            Error::MissingField { record: 2, ref field } if field == "id"
        ));
    }

    #[test]
    fn unparseable_year() {
        let text = format!("{HEADER}a,t,a,c,u,MMV,x\n");
        assert!(matches!(
            parse(&text, CorpusFormat::Csv).unwrap_err(),
            Error::InvalidYear { record: 1, ref value } if value == "MMV"
        ));
    }

    #[test]
    fn missing_header_column() {
        let text = "id,title,author,country,year,text\na,t,a,c,2005,x\n";
        assert!(matches!(
            parse(text, CorpusFormat::Csv).unwrap_err(),
            Error::Format { record: 0, .. }
        ));
    }

    #[test]
    fn tsv_with_reordered_columns() {
        let text = "year\ttext\tid\ttitle\tauthor\tcountry\tuniversity\n2010\tsocial networks\td1\tT\tA\tUS\tU\n";
        let c = parse(text, CorpusFormat::Tsv).unwrap();
        assert_eq!(c.documents()[0].id, "d1");
        assert_eq!(c.documents()[0].year, 2010);
    }

    #[test]
    fn jsonl_accepts_numeric_and_string_years() {
        let text = r#"{"id":"a","title":"t","author":"x","country":"US","university":"u","year":2005,"text":"hello"}

{"id":"b","title":"t","author":"x","country":"US","university":"u","year":"2006","text":"world"}
"#;
        let c = parse(text, CorpusFormat::Jsonl).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.documents()[1].year, 2006);

        let bad = r#"{"id":"a","text":"hello"}"#;
        assert!(matches!(
            parse(bad, CorpusFormat::Jsonl).unwrap_err(),
            Error::MissingField { record: 1, ref field } if field == "year"
        ));
        assert!(matches!(
            parse("[1,2]", CorpusFormat::Jsonl).unwrap_err(),
            Error::Format { record: 1, .. }
        ));
    }

    #[test]
    fn file_errors_carry_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        std::fs::write(&path, "id,title\n").unwrap();
        let err = ingest_corpus(&path, CorpusFormat::Csv, &TextNormalizer::identity()).unwrap_err();
        assert!(err.to_string().contains("c.csv"));
        let err = ingest_corpus(
            &dir.path().join("nope.csv"),
            CorpusFormat::Csv,
            &TextNormalizer::identity(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
