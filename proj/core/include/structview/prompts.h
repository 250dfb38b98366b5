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

#ifndef STRUCTVIEW_PROMPTS_H_
#define STRUCTVIEW_PROMPTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace structview {

enum class TemplateId {
  kDirectExtract,     // open extraction of all attribute/value pairs
  kAttrExtract,       // extraction of one named attribute
  kFnGenA,            // function synthesis, task description only
  kFnGenB,            // function synthesis with two worked examples
  kSchemaRerank,      // pick the most useful attributes from a union
  kSchemaValidate,    // yes/no plausibility of one value
  kAtomicCleanBig,    // decompose a complex attribute into atomic pairs
  kAtomicCleanSmall,  // one-shot extraction of one atomic attribute
};

inline constexpr TemplateId kAllTemplates[] = {
    TemplateId::kDirectExtract,  TemplateId::kAttrExtract,
    TemplateId::kFnGenA,         TemplateId::kFnGenB,
    TemplateId::kSchemaRerank,   TemplateId::kSchemaValidate,
    TemplateId::kAtomicCleanBig, TemplateId::kAtomicCleanSmall,
};

using Bindings = std::map<std::string, std::string, std::less<>>;

// Stable snake_case name, e.g. "fn_gen_A".
const char *TemplateName(TemplateId id);
std::optional<TemplateId> ParseTemplateName(std::string_view name);

// Raw template text. Placeholders are written `{{name:}}`.
std::string_view TemplateBody(TemplateId id);

// Placeholder names in order of first appearance.
std::vector<std::string> TemplatePlaceholders(TemplateId id);

// Substitutes every placeholder. Throws kInvalidArgument when a placeholder
// has no binding; unused bindings are ignored.
std::string RenderTemplate(TemplateId id, const Bindings &bindings);

}  // namespace structview

#endif  // STRUCTVIEW_PROMPTS_H_
