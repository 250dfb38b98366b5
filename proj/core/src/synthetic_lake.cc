// Copyright 2026 The Structview Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "structview/synthetic_lake.h"

#include <algorithm>
#include <array>
#include <filesystem>
#include <random>

#include <fmt/format.h>

#include "json.hpp"
#include "structview/direct.h"
#include "structview/pattern.h"
#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {
namespace {

// std:: distributions differ across standard libraries; these do not, so the
// generated lake is byte-identical everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  size_t Below(size_t n) { return static_cast<size_t>(engine_() % n); }
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  template <typename T, size_t N>
  const T &Pick(const std::array<T, N> &items) {
    return items[Below(N)];
  }

 private:
  std::mt19937_64 engine_;
};

using Words = std::array<const char *, 10>;

constexpr Words kBrands = {"Vital", "Nova",  "Apex",  "Helix",  "Orion",
                           "Summit", "Clear", "Lumen", "Zenith", "Aurora"};
constexpr Words kKinds = {"Infusion Pump",    "Pulse Oximeter",
                          "Glucose Monitor",  "Surgical Stapler",
                          "Catheter System",  "Bone Screw",
                          "Ultrasound Probe", "Ventilator",
                          "Hearing Aid",      "Wound Dressing"};
constexpr Words kFirms = {"Kestrel", "Marlow", "Northgate", "Halden",
                          "Verity",  "Quintel", "Ashby",    "Corvale",
                          "Brightwater", "Tamsin"};
constexpr std::array<const char *, 4> kFirmSuffixes = {
    "Medical Inc.", "Devices LLC", "Health Corp.", "Labs Ltd."};
constexpr Words kStreets = {"Oak",   "Maple", "Cedar",  "Harbor", "Mill",
                            "Ridge", "Lake",  "Granite", "Elm",   "Willow"};
constexpr std::array<const char *, 3> kStreetKinds = {"Street", "Avenue",
                                                      "Road"};
constexpr Words kCities = {"Springfield", "Fairview", "Riverton", "Lakewood",
                           "Milford",     "Ashland",  "Dayton",   "Clinton",
                           "Georgetown",  "Salem"};
constexpr Words kStates = {"MN", "CA", "MA", "TX", "OH",
                           "WA", "NC", "IL", "PA", "CO"};
constexpr std::array<const char *, 8> kPanels = {
    "Cardiovascular", "General Hospital", "Radiology",  "Orthopedic",
    "Neurology",      "Anesthesiology",   "Clinical Chemistry", "Dental"};
constexpr std::array<const char *, 4> kRecalls = {
    "Class II recall initiated", "Class I recall completed",
    "Recall terminated", "Field correction under review"};

constexpr std::array<const char *, 20> kFiller = {
    "The submission summarizes bench testing performed on production "
    "equivalent units.",
    "Biocompatibility was evaluated according to recognized consensus "
    "standards.",
    "Electrical safety and electromagnetic compatibility testing were "
    "completed without deviations.",
    "Software documentation was provided for a moderate level of concern.",
    "Sterilization validation followed an overkill half-cycle approach.",
    "Shelf life testing supports a labeled expiration of two years.",
    "The indications for use are identical to those of the predicate.",
    "Technological characteristics differ only in materials of the housing.",
    "No clinical testing was required to support substantial equivalence.",
    "Human factors evaluation identified no new use-related hazards.",
    "Packaging integrity was verified after simulated distribution.",
    "Labeling includes warnings consistent with similar marketed products.",
    "Risk analysis was updated to reflect the modified firmware.",
    "Performance data demonstrate accuracy within the stated tolerance.",
    "The reviewer requested additional information on cleaning "
    "instructions.",
    "A summary of design verification activities is attached.",
    "Reprocessing instructions were validated for reusable components.",
    "The sponsor confirmed conformance to the cited standards.",
    "Mechanical testing showed fatigue resistance beyond the worst case.",
    "Transport testing did not reveal any functional degradation.",
};

std::string RegexEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) {
      out += '\\';
    }
    out += c;
  }
  return out;
}

std::string FormatLine(PlantedFormat f, std::string_view label,
                       std::string_view value) {
  switch (f) {
    case PlantedFormat::kColonLine:
      return fmt::format("{}: {}", label, value);
    case PlantedFormat::kTableRow:
      return fmt::format("<tr><th>{}</th><td>{}</td></tr>", label, value);
    case PlantedFormat::kBoldParagraph:
      return fmt::format("<p><b>{}</b> - {}</p>", label, value);
  }
  return "";
}

// Regex prefix that introduces the value in each format.
std::string FormatPrefix(size_t format, std::string_view label) {
  const std::string l = RegexEscape(label);
  switch (format) {
    case 0: return "^" + l + ": ";
    case 1: return "<th>" + l + "</th><td>";
    default: return "<b>" + l + "</b> - ";
  }
}

// Native pattern program that reads `label` in the listed formats. `alt`
// selects an equivalent spelling so two universal candidates differ.
std::string PatternFor(std::string_view label,
                       const std::vector<size_t> &formats, bool alt = false) {
  std::string prefixes;
  for (size_t f : formats) {
    if (!prefixes.empty()) prefixes += '|';
    prefixes += FormatPrefix(f, label);
  }
  nlohmann::ordered_json j;
  j["pattern"] = "(?:" + prefixes + ")" + (alt ? "([^<\\r\\n]+)" : "([^<\\n]*)");
  j["group"] = 1;
  j["flags"] = "m";
  j["post"] = alt ? nlohmann::ordered_json::array({"trim", "collapse_ws"})
                  : nlohmann::ordered_json::array({"trim"});
  return j.dump();
}

std::string FirstValue(std::string_view label, std::string_view text) {
  const auto values =
      PatternProgram::Parse(PatternFor(label, {0, 1, 2})).Apply(text);
  return values.empty() ? "" : values.front();
}

const PlantedAttribute *FindPlanted(std::string_view name) {
  const std::string key = NormalizeAttribute(name);
  for (const auto &p : PlantedAttributes()) {
    if (NormalizeAttribute(p.label) == key) return &p;
  }
  return nullptr;
}

std::string Binding(const Bindings &b, std::string_view name) {
  auto it = b.find(name);
  if (it == b.end()) {
    throw Error(ErrorCode::kProvider,
                "simulated provider: missing binding '" + std::string(name) +
                    "'");
  }
  return it->second;
}

// Format of a snippet's first mention of `label`; colon line if none.
size_t SnippetFormat(std::string_view label, std::string_view text) {
  for (size_t f = 0; f < kPlantedFormats; ++f) {
    if (!PatternProgram::Parse(PatternFor(label, {f})).Apply(text).empty()) {
      return f;
    }
  }
  return 0;
}

std::vector<std::string> SplitParts(std::string_view value) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t comma = value.find(", ", start);
    parts.emplace_back(Trim(value.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 2;
  }
  return parts;
}

}  // namespace

const std::vector<PlantedAttribute> &PlantedAttributes() {
  static const std::vector<PlantedAttribute> kPlanted = {
      {"Device Name", 1.0},       {"Applicant", 1.0},
      {"Applicant Address", 1.0}, {"Decision Date", 1.0},
      {"Product Code", 1.0},      {"510(k) Number", 1.0},
      {"Review Panel", 0.95},     {"Recall Status", 0.30},
  };
  return kPlanted;
}

std::vector<std::string> SyntheticLake::labels() const {
  std::vector<std::string> out;
  for (const auto &p : PlantedAttributes()) out.push_back(p.label);
  return out;
}

Table SyntheticLake::Gold() const {
  std::vector<std::string> ids;
  std::vector<CellPrediction> cells;
  for (const auto &d : docs) {
    ids.push_back(d.id);
    for (const auto &[label, value] : d.values) {
      cells.push_back({d.id, label, value, ""});
    }
  }
  return Materialize(topic, labels(), ids, cells);
}

Corpus SyntheticLake::ToCorpus() const {
  std::vector<Document> out;
  for (const auto &d : docs) {
    Document doc;
    doc.id = d.id;
    doc.format = EndsWith(d.id, ".html") ? DocFormat::kHtml : DocFormat::kTxt;
    doc.text = d.text;
    doc.token_count = CountTokens(d.text);
    out.push_back(std::move(doc));
  }
  return Corpus(std::move(out));
}

SyntheticLake GenerateSyntheticLake(const SyntheticLakeOptions &options) {
  if (options.docs == 0) {
    throw Error(ErrorCode::kInvalidArgument, "lake needs at least one doc");
  }
  Rng rng(options.seed);
  SyntheticLake lake;
  lake.topic = std::string(kSyntheticTopic);
  for (size_t i = 0; i < options.docs; ++i) {
    SyntheticDoc doc;
    const bool html = i % 2 == 0;
    doc.id = fmt::format("report_{:03d}.{}", i, html ? "html" : "txt");

    // Draws are sequenced one per statement: argument evaluation order is
    // unspecified and would make the lake compiler-dependent.
    std::map<std::string, std::string> v;
    {
      const std::string brand = rng.Pick(kBrands);
      const std::string kind = rng.Pick(kKinds);
      const size_t model = 100 + rng.Below(900);
      v["Device Name"] = fmt::format("{} {} X{}", brand, kind, model);
    }
    {
      const std::string firm = rng.Pick(kFirms);
      const std::string suffix = rng.Pick(kFirmSuffixes);
      v["Applicant"] = fmt::format("{} {}", firm, suffix);
    }
    {
      const size_t number = 100 + rng.Below(9900);
      const std::string street = rng.Pick(kStreets);
      const std::string kind = rng.Pick(kStreetKinds);
      const std::string city = rng.Pick(kCities);
      const std::string state = rng.Pick(kStates);
      const size_t zip = rng.Below(100000);
      v["Applicant Address"] = fmt::format("{} {} {}, {}, {} {:05d}", number,
                                           street, kind, city, state, zip);
    }
    {
      const size_t year = 2015 + rng.Below(9);
      const size_t month = 1 + rng.Below(12);
      const size_t day = 1 + rng.Below(28);
      v["Decision Date"] = fmt::format("{}-{:02d}-{:02d}", year, month, day);
    }
    std::string code(3, 'A');
    for (char &c : code) c = static_cast<char>('A' + rng.Below(26));
    v["Product Code"] = code;
    v["510(k) Number"] = fmt::format("K{:06d}", rng.Below(1000000));
    v["Review Panel"] = rng.Pick(kPanels);
    v["Recall Status"] = rng.Pick(kRecalls);

    std::vector<std::string> lines;
    for (const auto &p : PlantedAttributes()) {
      const double draw = rng.Unit();
      const auto format = static_cast<PlantedFormat>(rng.Below(kPlantedFormats));
      if (draw >= p.presence) continue;
      doc.values[p.label] = v[p.label];
      doc.formats[p.label] = format;
      lines.push_back(FormatLine(format, p.label, v[p.label]));
    }
    doc.has_footer = rng.Unit() < 0.4;

    auto paragraph = [&](size_t n) {
      std::string s;
      for (size_t k = 0; k < n; ++k) {
        if (k) s += ' ';
        s += rng.Pick(kFiller);
      }
      return s;
    };
    const size_t before = options.filler_sentences / 2;
    const std::string intro = paragraph(before);
    const std::string outro = paragraph(options.filler_sentences - before);

    std::string text;
    if (html) {
      text += fmt::format(
          "<html>\n<head><title>Premarket notification {}</title></head>\n"
          "<body>\n<h1>Premarket notification {}</h1>\n<p>{}</p>\n",
          i, i, intro);
    } else {
      text += fmt::format("PREMARKET NOTIFICATION {}\n\n{}\n\n", i, intro);
    }
    for (const auto &line : lines) text += line + "\n";
    if (html) {
      text += fmt::format("<p>{}</p>\n", outro);
      if (doc.has_footer) text += "<p>Page 1 of 1</p>\n";
      text += "</body>\n</html>\n";
    } else {
      text += fmt::format("\n{}\n", outro);
      if (doc.has_footer) text += "\nPage 1 of 1\n";
    }
    doc.text = std::move(text);
    lake.docs.push_back(std::move(doc));
  }
  return lake;
}

SyntheticLake SyntheticLakeFromCorpus(const Corpus &corpus) {
  SyntheticLake lake;
  lake.topic = std::string(kSyntheticTopic);
  for (const auto &d : corpus.documents()) {
    SyntheticDoc doc;
    doc.id = d.id;
    doc.text = d.text;
    lake.docs.push_back(std::move(doc));
  }
  return lake;
}

void WriteSyntheticLake(const SyntheticLake &lake, const std::string &dir,
                        const std::string &gold_path) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir);
  for (const auto &d : lake.docs) {
    WriteFile((std::filesystem::path(dir) / d.id).string(), d.text);
  }
  WriteFile(gold_path, EmitJsonl(lake.Gold()));
}

const char *PlantedRoleName(PlantedRole role) {
  switch (role) {
    case PlantedRole::kSingleFormat: return "single-format";
    case PlantedRole::kUniversal: return "universal";
    case PlantedRole::kPartial: return "partial";
    case PlantedRole::kWrongField: return "wrong-field";
  }
  return "?";
}

PlantedRole SyntheticSlotRole(size_t snippet, PromptVariant prompt) {
  const bool a = prompt == PromptVariant::kA;
  switch (snippet % 3) {
    case 0: return a ? PlantedRole::kSingleFormat : PlantedRole::kUniversal;
    case 1: return a ? PlantedRole::kPartial : PlantedRole::kWrongField;
    default: return a ? PlantedRole::kUniversal : PlantedRole::kPartial;
  }
}

PlantedRole SyntheticCandidateRole(std::string_view id) {
  const size_t last = id.rfind(':');
  const size_t mid = last == std::string_view::npos ? last : id.rfind(':', last - 1);
  if (mid == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed candidate id '" + std::string(id) + "'");
  }
  const std::string_view prompt = id.substr(mid + 1, last - mid - 1);
  const size_t ordinal = std::stoul(std::string(id.substr(last + 1)));
  return SyntheticSlotRole(ordinal,
                           prompt == "A" ? PromptVariant::kA : PromptVariant::kB);
}

SimulatedProvider::SimulatedProvider(SyntheticLake lake)
    : lake_(std::move(lake)), corpus_(lake_.ToCorpus()) {}

const SyntheticDoc *SimulatedProvider::FindDoc(std::string_view chunk) const {
  for (const auto &d : lake_.docs) {
    if (d.text.find(chunk) != std::string::npos) return &d;
  }
  return nullptr;
}

ProviderResponse SimulatedProvider::Complete(const CompletionRequest &r) {
  ProviderResponse out;
  switch (r.template_id) {
    case TemplateId::kDirectExtract: out.completion = Direct(r.bindings); break;
    case TemplateId::kAttrExtract: out.completion = Oracle(r.bindings); break;
    case TemplateId::kFnGenA:
      out.completion = FunctionGen(r.bindings, PromptVariant::kA);
      break;
    case TemplateId::kFnGenB:
      out.completion = FunctionGen(r.bindings, PromptVariant::kB);
      break;
    case TemplateId::kSchemaRerank: out.completion = Rerank(r.bindings); break;
    case TemplateId::kSchemaValidate:
      out.completion = Validate(r.bindings);
      break;
    case TemplateId::kAtomicCleanBig:
      out.completion = AtomicBig(r.bindings);
      break;
    case TemplateId::kAtomicCleanSmall:
      out.completion = AtomicSmall(r.bindings);
      break;
  }
  return out;
}

// Every planted field in the chunk, one doc in five with a spelling variant,
// the page footer as noise, and a hallucinated field the provenance filter
// has to catch.
std::string SimulatedProvider::Direct(const Bindings &b) const {
  const std::string chunk = Binding(b, "chunk");
  const SyntheticDoc *doc = FindDoc(chunk);
  const size_t index = doc ? static_cast<size_t>(doc - lake_.docs.data()) : 0;
  std::string out;
  for (const auto &p : PlantedAttributes()) {
    const std::string value = FirstValue(p.label, chunk);
    if (value.empty()) continue;
    const std::string name =
        p.label == "Decision Date" && index % 5 == 1 ? "Decision date" : p.label;
    out += fmt::format("\n- {}: {}", name, value);
  }
  if (chunk.find("Page 1 of 1") != std::string::npos) {
    out += "\n- Page: 1 of 1";
  }
  if (index % 5 == 0) out += "\n- Regulatory Info: Class II";
  return out;
}

std::string SimulatedProvider::Oracle(const Bindings &b) const {
  const std::string chunk = Binding(b, "chunk");
  const std::string attribute = Binding(b, "attribute");
  const PlantedAttribute *planted = FindPlanted(attribute);
  if (planted == nullptr) return "";
  const std::string value = FirstValue(planted->label, chunk);
  if (!value.empty()) return fmt::format(" \n- {}: {}", attribute, value);
  // One invented answer on the sparse attribute, outside the document.
  const SyntheticDoc *doc = FindDoc(chunk);
  const size_t index = doc ? static_cast<size_t>(doc - lake_.docs.data()) : 1;
  if (planted->presence < 0.5 && index % 40 == 0) {
    return fmt::format(" \n- {}: Voluntary recall pending", attribute);
  }
  return "";
}

std::string SimulatedProvider::Rerank(const Bindings &b) const {
  const std::string listing = Binding(b, "attributes");
  std::string out;
  for (const auto &line : SplitLines(listing)) {
    std::string_view name = Trim(line);
    if (StartsWith(name, "- ")) name = Trim(name.substr(2));
    if (FindPlanted(name)) out += fmt::format("\n{}", name);
  }
  return out;
}

std::string SimulatedProvider::Validate(const Bindings &b) const {
  return FindPlanted(Binding(b, "attr_str")) ? " Yes" : " No";
}

std::string SimulatedProvider::FunctionGen(const Bindings &b,
                                           PromptVariant prompt) const {
  const std::string chunk = Binding(b, "chunk");
  const std::string attribute = Binding(b, "attribute");
  const PlantedAttribute *planted = FindPlanted(attribute);
  const std::string label = planted ? planted->label : attribute;

  const std::vector<Snippet> snippets = KeywordSearch(corpus_, attribute);
  size_t slot = 0;
  std::array<size_t, 3> formats = {0, 1, 2};
  for (size_t s = 0; s < snippets.size(); ++s) {
    if (snippets[s].text == chunk) slot = s;
    if (s < formats.size()) formats[s] = SnippetFormat(label, snippets[s].text);
  }
  const size_t own = SnippetFormat(label, chunk);

  std::string pattern;
  switch (SyntheticSlotRole(slot, prompt)) {
    case PlantedRole::kSingleFormat:
      pattern = PatternFor(label, {own});
      break;
    case PlantedRole::kUniversal:
      pattern = PatternFor(label, {0, 1, 2}, slot % 3 == 2);
      break;
    case PlantedRole::kPartial: {
      // The two partial candidates never miss the same format, so every
      // value keeps a majority among the sound candidates.
      const size_t miss_a = (formats[1] + 2) % 3;
      size_t miss = miss_a;
      if (slot % 3 == 2) {
        for (size_t f = 0; f < 3; ++f) {
          if (f != own && f != miss_a) {
            miss = f;
            break;
          }
        }
      }
      std::vector<size_t> keep;
      for (size_t f = 0; f < 3; ++f) {
        if (f != miss) keep.push_back(f);
      }
      pattern = PatternFor(label, keep);
      break;
    }
    case PlantedRole::kWrongField: {
      const auto &planted_all = PlantedAttributes();
      size_t next = 0;
      for (size_t i = 0; i < planted_all.size(); ++i) {
        if (planted_all[i].label == label) next = (i + 1) % planted_all.size();
      }
      pattern = PatternFor(planted_all[next].label, {0, 1, 2});
      break;
    }
  }
  return fmt::format("\n```json\n{}\n```\n", pattern);
}

std::string SimulatedProvider::AtomicBig(const Bindings &b) const {
  const std::string attribute = Binding(b, "complex_attribute");
  const std::string value = Binding(b, "complex_value");
  const std::vector<std::string> parts = SplitParts(value);
  nlohmann::json list = nlohmann::json::array();
  if (parts.size() == 1) {
    list.push_back({attribute, value});
  } else {
    for (size_t i = 0; i < parts.size(); ++i) {
      list.push_back({fmt::format("{} part {}", attribute, i + 1), parts[i]});
    }
  }
  return " " + list.dump();
}

std::string SimulatedProvider::AtomicSmall(const Bindings &b) const {
  const std::string extraction = Binding(b, "complex_extraction");
  const std::string cleaned = Binding(b, "cleaned_attribute");
  const std::vector<std::string> parts = SplitParts(extraction);
  const size_t at = cleaned.rfind(" part ");
  if (at == std::string::npos) return " " + extraction;
  const size_t n = std::strtoul(cleaned.c_str() + at + 6, nullptr, 10);
  return n >= 1 && n <= parts.size() ? " " + parts[n - 1] : "";
}

}  // namespace structview
