//! XML part database.
//!
//! ```xml
//! <Parts>
//!   <Part>
//!     <id>1</id>
//!     <Part_name>Right Wheel</Part_name>
//!     <Lift><X>-1.0</X><Z>3.7</Z></Lift>
//!     <Put><X>0.4</X><Z>2.0</Z></Put>
//!     <Image1>RightWheelLift.jpg</Image1>
//!     <Image2>RightWheelPut.jpg</Image2>
//!     <Commands_Lift>Lift Wheel</Commands_Lift>
//!     <Commands_Put>Fix Wheel</Commands_Put>
//!     <videoPath>right_wheel_video.avi</videoPath>
//!   </Part>
//! </Parts>
//! ```

use std::collections::HashSet;
use std::fmt;

use roxmltree::{Document, Node};
use thiserror::Error;

use crate::scalar::Scalar;

pub const ROOT_ELEMENT: &str = "Parts";
pub const PART_ELEMENT: &str = "Part";

const PART_FIELDS: [&str; 9] =
    ["id", "Part_name", "Lift", "Put", "Image1", "Image2", "Commands_Lift", "Commands_Put", "videoPath"];

/// A point on the floor plane, in sensor meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloorPoint<T> {
    pub x: T,
    pub z: T,
}

impl<T: Scalar> FloorPoint<T> {
    pub fn new(x: T, z: T) -> Self {
        Self { x, z }
    }

    pub fn distance_to(&self, other: &FloorPoint<T>) -> T {
        crate::scalar::planar_distance((self.x, self.z), (other.x, other.z))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Part<T> {
    pub id: u32,
    pub part_name: String,
    pub lift: FloorPoint<T>,
    pub put: FloorPoint<T>,
    pub image1: String,
    pub image2: String,
    pub commands_lift: String,
    pub commands_put: String,
    pub video_path: String,
}

/// Parts in assembly order.
#[derive(Debug, Clone, PartialEq)]
pub struct PartsDb<T> {
    pub parts: Vec<Part<T>>,
}

impl<T: Scalar> PartsDb<T> {
    pub fn new(parts: Vec<Part<T>>) -> Self {
        Self { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn position_of(&self, id: u32) -> Option<usize> {
        self.parts.iter().position(|p| p.id == id)
    }
}

/// Result of a successful parse: the database plus notes about ignored content.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedDb<T> {
    pub db: PartsDb<T>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartsDbError {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("root element must be <{ROOT_ELEMENT}>, found <{0}>")]
    WrongRoot(String),
    #[error("missing element {element} in part at index {index}")]
    MissingElement { element: String, index: usize },
    #[error("element {element} appears more than once in part at index {index}")]
    DuplicateElement { element: String, index: usize },
    #[error("non-numeric value `{text}` for {element} in part at index {index}")]
    NotNumeric { element: String, index: usize, text: String },
    #[error("id `{text}` in part at index {index} is not a positive integer")]
    BadId { text: String, index: usize },
    #[error("duplicate id {id} in part at index {index}")]
    DuplicateId { id: u32, index: usize },
}

fn text_of(node: Node) -> String {
    node.descendants().filter(|n| n.is_text()).filter_map(|n| n.text()).collect::<String>().trim().to_string()
}

fn unique_child<'a, 'input>(
    parent: Node<'a, 'input>,
    name: &str,
    path: &str,
    index: usize,
) -> Result<Node<'a, 'input>, PartsDbError> {
    let mut found = parent.children().filter(|c| c.is_element() && c.tag_name().name() == name);
    let first = found
        .next()
        .ok_or_else(|| PartsDbError::MissingElement { element: path.to_string(), index })?;
    if found.next().is_some() {
        return Err(PartsDbError::DuplicateElement { element: path.to_string(), index });
    }
    Ok(first)
}

fn parse_point<T: Scalar>(
    part: Node,
    name: &str,
    index: usize,
    warnings: &mut Vec<String>,
) -> Result<FloorPoint<T>, PartsDbError> {
    let node = unique_child(part, name, name, index)?;
    let coord = |axis: &str| -> Result<T, PartsDbError> {
        let path = format!("{name}.{axis}");
        let text = text_of(unique_child(node, axis, &path, index)?);
        text.parse::<T>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or(PartsDbError::NotNumeric { element: path, index, text })
    };
    let point = FloorPoint::new(coord("X")?, coord("Z")?);
    for extra in node.children().filter(|c| c.is_element()) {
        let tag = extra.tag_name().name();
        if tag != "X" && tag != "Z" {
            warnings.push(format!("ignored element {name}.{tag} in part at index {index}"));
        }
    }
    Ok(point)
}

fn parse_part<T: Scalar>(node: Node, index: usize, warnings: &mut Vec<String>) -> Result<Part<T>, PartsDbError> {
    let text = |name: &str| unique_child(node, name, name, index).map(text_of);

    let id_text = text("id")?;
    let id = match id_text.parse::<u32>() {
        Ok(id) if id >= 1 => id,
        _ => return Err(PartsDbError::BadId { text: id_text, index }),
    };
    let part = Part {
        id,
        part_name: text("Part_name")?,
        lift: parse_point(node, "Lift", index, warnings)?,
        put: parse_point(node, "Put", index, warnings)?,
        image1: text("Image1")?,
        image2: text("Image2")?,
        commands_lift: text("Commands_Lift")?,
        commands_put: text("Commands_Put")?,
        video_path: text("videoPath")?,
    };
    for extra in node.children().filter(|c| c.is_element()) {
        let tag = extra.tag_name().name();
        if !PART_FIELDS.contains(&tag) {
            warnings.push(format!("ignored element {tag} in part at index {index}"));
        }
    }
    Ok(part)
}

/// Parses a `<Parts>` document, preserving part order.
pub fn parse_parts_xml<T: Scalar>(text: &str) -> Result<ParsedDb<T>, PartsDbError> {
    let doc = Document::parse(text).map_err(|e| PartsDbError::Xml(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != ROOT_ELEMENT {
        return Err(PartsDbError::WrongRoot(root.tag_name().name().to_string()));
    }

    let mut warnings = Vec::new();
    let mut parts: Vec<Part<T>> = Vec::new();
    let mut seen = HashSet::new();
    for child in root.children().filter(|c| c.is_element()) {
        if child.tag_name().name() != PART_ELEMENT {
            warnings.push(format!("ignored element {} under <{ROOT_ELEMENT}>", child.tag_name().name()));
            continue;
        }
        let index = parts.len();
        let part = parse_part(child, index, &mut warnings)?;
        if !seen.insert(part.id) {
            return Err(PartsDbError::DuplicateId { id: part.id, index });
        }
        parts.push(part);
    }
    Ok(ParsedDb { db: PartsDb::new(parts), warnings })
}

#[derive(Debug, Clone, PartialEq)]
pub enum DbViolation {
    DuplicateId(u32),
    NonPositiveDepth { id: u32, target: &'static str },
    ZeroId { index: usize },
    EmptyField { id: u32, field: &'static str },
}

impl fmt::Display for DbViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DbViolation::DuplicateId(id) => write!(f, "duplicate id {id}"),
            DbViolation::NonPositiveDepth { id, target } => write!(f, "non-positive depth in {target} of part {id}"),
            DbViolation::ZeroId { index } => write!(f, "id must be positive (part at index {index})"),
            DbViolation::EmptyField { id, field } => write!(f, "empty {field} in part {id}"),
        }
    }
}

/// Checks id uniqueness, positive depths and non-empty names and asset paths.
pub fn validate_db<T: Scalar>(db: &PartsDb<T>) -> Result<(), Vec<DbViolation>> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for (index, part) in db.parts.iter().enumerate() {
        if part.id == 0 {
            violations.push(DbViolation::ZeroId { index });
        }
        if !seen.insert(part.id) {
            violations.push(DbViolation::DuplicateId(part.id));
        }
        for (target, point) in [("Lift", part.lift), ("Put", part.put)] {
            if point.z <= T::zero() || point.z.is_nan() {
                violations.push(DbViolation::NonPositiveDepth { id: part.id, target });
            }
        }
        for (field, value) in [
            ("Part_name", &part.part_name),
            ("Image1", &part.image1),
            ("Image2", &part.image2),
            ("videoPath", &part.video_path),
        ] {
            if value.trim().is_empty() {
                violations.push(DbViolation::EmptyField { id: part.id, field });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
