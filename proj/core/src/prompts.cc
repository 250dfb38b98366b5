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

#include "structview/prompts.h"

#include <algorithm>

#include "structview/status.h"

namespace structview {
namespace {
constexpr std::string_view kDirectExtractBody = R"prompt(Sample text:
<tr class="mergedrow"><th scope="row" class="infobox-label"><div style="text-indent:-0.9em;margin-left:1.2em;font-weight:normal;"><a href="/wiki/Monarchy_of_Canada" title="Monarchy of Canada">Monarch</a> </div></th><td class="infobox-data"><a href="/wiki/Charles_III" title="Charles III">Charles III</a></td></tr>
<tr class="mergedrow"><th scope="row" class="infobox-label"><div style="text-indent:-0.9em;margin-left:1.2em;font-weight:normal;"><span class="nowrap"><a href="/wiki/Governor_General_of_Canada" title="Governor General of Canada">Governor General</a></span> </div></th><td class="infobox-data"><a href="/wiki/Mary_Simon" title="Mary Simon">Mary Simon</a></td></tr>
<b>Provinces and Territories</b class='navlinking countries'>
<ul>
<li>Saskatchewan</li>
<li>Manitoba</li>
<li>Ontario</li>
<li>Quebec</li>
<li>New Brunswick</li>
<li>Prince Edward Island</li>
<li>Nova Scotia</li>
<li>Newfoundland and Labrador</li>
<li>Yukon</li>
<li>Nunavut</li>
<li>Northwest Territories</li>
</ul>

Question: List all relevant attributes about 'Canada' that are exactly mentioned in this sample text if any.
Answer: 
- Monarch: Charles III
- Governor General: Mary Simon
- Provinces and Territories: Saskatchewan, Manitoba, Ontario, Quebec, New Brunswick, Prince Edward Island, Nova Scotia, Newfoundland and Labrador, Yukon, Nunavut, Northwest Territories

----

Sample text:
Patient birth date: 1990-01-01
Prescribed medication: aspirin, ibuprofen, acetaminophen
Prescribed dosage: 1 tablet, 2 tablets, 3 tablets
Doctor's name: Dr. Burns
Date of discharge: 2020-01-01
Hospital address: 123 Main Street, New York, NY 10001

Question: List all relevant attributes about 'medications' that are exactly mentioned in this sample text if any.
Answer: 
- Prescribed medication: aspirin, ibuprofen, acetaminophen
- Prescribed dosage: 1 tablet, 2 tablets, 3 tablets

----

Sample text:
{{chunk:}}

Question: List all relevant attributes about '{{topic:}}' that are exactly mentioned in this sample text if any. 
Answer:)prompt";
constexpr std::string_view kAttrExtractBody = R"prompt(Here is a file sample:

<th>Location</th>
<td><a href="/wiki/Cupertino">Cupertino</a>, <a href="/wiki/California">California</a>Since 1987</td>

Question: Return the full "location" span of this sample if it exists, otherwise output nothing. 
Answer: 
- Location: Cupertino, California Since 1987

----

Here is a file sample:

{{chunk:}}

Question: Return the full "{{attribute:}}" span of this sample if it exists, otherwise output nothing.
Answer:)prompt";
constexpr std::string_view kFnGenABody = R"prompt(Here is a sample of text:

{{chunk:}}


Question: Write a python function to extract the entire "{{attribute:}}" field from text, but not any other metadata. Return the result as a list.


import re

def get_{{function_field:}}_field(text: str):
    """
    Function to extract the "{{attribute:}} field". 
    """)prompt";
constexpr std::string_view kFnGenBBody = R"prompt(Here is a file sample:

DESCRIPTION: This file answers the question, "How do I sort a dictionary by value?"
DATES MODIFIED: The file was modified on the following dates:
2009-03-05T00:49:05
2019-04-07T00:22:14
2011-11-20T04:21:49
USERS: The users who modified the file are:
Jeff Jacobs
Richard Smith
Julia D'Angelo
Rebecca Matthews
FILE TYPE: This is a text file.

Question: Write a python function called "get_dates_modified_field" to extract the "DATES MODIFIED" field from the text. Include any imports.

import re

def get_dates_modified_field(text: str):
    """
    Function to extract the dates modified.
    """
    parts= text.split("USERS")[0].split("DATES MODIFIED")[-1]
    pattern = r'\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}'
    return re.findall(pattern, text)

----

Here is a file sample:

<title>U.S. GDP Rose 2.9
<meta property="og:url" content="https://www.wsj.com/articles/us-gdp-economic-growth-fourth-quarter-2022-11674683034"/>
<meta name="article.published" content="2023-01-26T10:30:00Z"/><meta itemProp="datePublished" content="2023-01-26T10:30:00Z"/>
<meta name="article.created" content="2023-01-26T10:30:00Z"/><meta itemProp="dateCreated" content="2023-01-26T10:30:00Z"/>
<meta name="dateLastPubbed" content="2023-01-31T19:17:00Z"/><meta name="author" content="Sarah Chaney Cambon"/>

Question: Write a python function called "get_date_published_field" to extract the "datePublished" field from the text. Include any imports.

from bs4 import BeautifulSoup

def get_date_published_field(text: str):
    """
    Function to extract the date published.
    """
    soup = BeautifulSoup(text, parser="html.parser")
    date_published_field = soup.find('meta', itemprop="datePublished")
    date_published_field = date_published_field['content']
    return date_published_field

----

Here is a sample of text:

{{chunk:}}

Question: Write a python function called "get_{{function_field:}}_field" to extract the "{{attribute:}}" field from the text. Include any imports.)prompt";
constexpr std::string_view kSchemaValidateBody = R"prompt(Question: Could "2014" be a "year" value in a "students" database?
Answer: Yes

----

Question: Could "cupcake" be a "occupation" value in a "employee" database?
Answer: No

----

Question: Could "''" be a "animal" value in a "zoo" database?
Answer: No

----

Question: Could "police officer" be a "occupation" value in a "employee" database?
Answer: Yes

----

Question: Could "{{value:}}" be a "{{attr_str:}}" value in a {{topic:}} database?
Answer:)prompt";
constexpr std::string_view kAtomicCleanBigBody = R"prompt(Extract one or more atomic schemas and values from the given schemas and values as a JSON list of pairs.

Schema: Spouse
Value: Michelle Robinson (m. 1992)

Atomic schemas and values: [["Spouse Name", "Michelle Robinson"], ["Married Year", 1992]]

---

Schema: In office
Value: January 8, 1997 - November 4, 2004

Atomic schemas and values: [["In Office Start Year", "January 8, 1997"], ["In Office End Year", "November 4, 20024"]]

---

Schema: Gini (2020)
Value: 46.9

Atomic schemas and values: [["Gini 2020", "46.9"]]

---

Schema: Countries
Value: United States (29 teams)\n Canada (1 team)

Atomic schemas and values: [["Countries", ["United States (29 teams)", "Canada (1 team)"]]]

---

Schema: {{complex_attribute:}}
Value: {{complex_value:}}

Atomic schemas and values:)prompt";
constexpr std::string_view kAtomicCleanSmallBody = R"prompt(Extract the attribute from the context.

Context: {{complex_attribute_example:}}: {{complex_extraction_example:}}
Attribute: {{cleaned_attribute_example:}}
Value: {{cleaned_value_example:}}

---

Context: {{complex_attribute:}}: {{complex_extraction:}}
Attribute: {{cleaned_attribute:}}
Value:)prompt";

// Re-ranking has no published wording; this one follows the house style of
// the other templates.
constexpr std::string_view kSchemaRerankBody = R"prompt(Here is a list of attributes extracted from documents about '{{topic:}}':

{{attributes:}}

Question: Which of these attributes are the most useful to include in a '{{topic:}}' database? List each useful attribute exactly as written, one per line.
Answer:)prompt";

struct TemplateInfo {
  TemplateId id;
  const char *name;
  std::string_view body;
};

constexpr TemplateInfo kTemplates[] = {
    {TemplateId::kDirectExtract, "direct_extract", kDirectExtractBody},
    {TemplateId::kAttrExtract, "attr_extract", kAttrExtractBody},
    {TemplateId::kFnGenA, "fn_gen_A", kFnGenABody},
    {TemplateId::kFnGenB, "fn_gen_B", kFnGenBBody},
    {TemplateId::kSchemaRerank, "schema_rerank", kSchemaRerankBody},
    {TemplateId::kSchemaValidate, "schema_validate", kSchemaValidateBody},
    {TemplateId::kAtomicCleanBig, "atomic_clean_big", kAtomicCleanBigBody},
    {TemplateId::kAtomicCleanSmall, "atomic_clean_small",
     kAtomicCleanSmallBody},
};

const TemplateInfo &Info(TemplateId id) {
  for (const auto &t : kTemplates) {
    if (t.id == id) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown template id");
}

constexpr std::string_view kOpen = "{{";
constexpr std::string_view kClose = ":}}";

}  // namespace

const char *TemplateName(TemplateId id) { return Info(id).name; }

std::optional<TemplateId> ParseTemplateName(std::string_view name) {
  for (const auto &t : kTemplates) {
    if (name == t.name) return t.id;
  }
  return std::nullopt;
}

std::string_view TemplateBody(TemplateId id) { return Info(id).body; }

std::vector<std::string> TemplatePlaceholders(TemplateId id) {
  std::vector<std::string> names;
  const std::string_view body = TemplateBody(id);
  size_t pos = 0;
  while ((pos = body.find(kOpen, pos)) != std::string_view::npos) {
    const size_t close = body.find(kClose, pos + kOpen.size());
    if (close == std::string_view::npos) break;
    std::string name(body.substr(pos + kOpen.size(),
                                 close - pos - kOpen.size()));
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      names.push_back(std::move(name));
    }
    pos = close + kClose.size();
  }
  return names;
}

std::string RenderTemplate(TemplateId id, const Bindings &bindings) {
  const std::string_view body = TemplateBody(id);
  std::string out;
  out.reserve(body.size() + 256);
  size_t pos = 0;
  while (true) {
    const size_t open = body.find(kOpen, pos);
    const size_t close = open == std::string_view::npos
                             ? std::string_view::npos
                             : body.find(kClose, open + kOpen.size());
    if (close == std::string_view::npos) {
      out.append(body.substr(pos));
      break;
    }
    const std::string_view name =
        body.substr(open + kOpen.size(), close - open - kOpen.size());
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("unbound placeholder '") + std::string(name) +
                      "' in template " + TemplateName(id));
    }
    out.append(body.substr(pos, open - pos));
    out.append(it->second);
    pos = close + kClose.size();
  }
  return out;
}

}  // namespace structview
