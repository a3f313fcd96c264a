//! Serde adapters: every number in the scenario and report formats is a
//! decimal string, so exactness never depends on a JSON number parser.

pub mod rat_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::rational::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(D::Error::custom)
    }
}

pub mod rat_vec {
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use crate::rational::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&fmt_rat(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rat(s).map_err(D::Error::custom)).collect()
    }
}

pub mod int_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &i64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim()
            .replace('\u{2212}', "-")
            .parse()
            .map_err(|_| D::Error::custom(format!("expected an integer string, got {raw:?}")))
    }
}

pub mod uint_str {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer, T: Display>(n: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> Result<T, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim().parse().map_err(|_| D::Error::custom(format!("expected a non-negative integer string, got {raw:?}")))
    }
}
