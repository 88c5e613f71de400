//------------------------------------------------------------------------------
//
//   Copyright 2026 The Agora Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "agora/ingest/xml.hpp"

#include <expat.h>

#include <climits>
#include <memory>

namespace agora::ingest::xml {

std::optional<std::string_view> Element::attribute(std::string_view key) const
{
  for (auto const &[k, v] : attributes)
  {
    if (k == key)
    {
      return std::string_view(v);
    }
  }
  return std::nullopt;
}

std::vector<Element const *> Element::children_named(std::string_view key) const
{
  std::vector<Element const *> out;
  for (auto const &child : children)
  {
    if (child.name == key)
    {
      out.push_back(&child);
    }
  }
  return out;
}

namespace {

struct ParserDeleter
{
  void operator()(XML_Parser p) const
  {
    XML_ParserFree(p);
  }
};

struct BuildState
{
  XML_Parser              parser = nullptr;
  std::optional<Element>  root;
  std::vector<Element *>  stack;
  std::optional<std::string> abort_reason;

  void abort(std::string reason)
  {
    if (!abort_reason)
    {
      abort_reason = std::move(reason);
    }
    XML_StopParser(parser, XML_FALSE);
  }
};

void on_start(void *user, XML_Char const *name, XML_Char const **atts)
{
  auto &st = *static_cast<BuildState *>(user);
  if (static_cast<int>(st.stack.size()) >= kMaxDepth)
  {
    st.abort("elements nested deeper than " + std::to_string(kMaxDepth));
    return;
  }
  Element el;
  el.name = name;
  el.line = static_cast<int>(XML_GetCurrentLineNumber(st.parser));
  for (auto a = atts; *a != nullptr; a += 2)
  {
    el.attributes.emplace_back(a[0], a[1]);
  }

  if (st.stack.empty())
  {
    st.root = std::move(el);
    st.stack.push_back(&*st.root);
  }
  else
  {
    auto &siblings = st.stack.back()->children;
    siblings.push_back(std::move(el));
    st.stack.push_back(&siblings.back());
  }
}

void on_end(void *user, XML_Char const *)
{
  auto &st = *static_cast<BuildState *>(user);
  st.stack.pop_back();
}

void on_text(void *user, XML_Char const *s, int len)
{
  auto &st = *static_cast<BuildState *>(user);
  if (!st.stack.empty())
  {
    st.stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
}

void on_doctype(void *user, XML_Char const *, XML_Char const *, XML_Char const *, int)
{
  static_cast<BuildState *>(user)->abort("DOCTYPE declarations are not accepted");
}

}  // namespace

Element parse(std::string_view document)
{
  if (document.size() > static_cast<std::size_t>(INT_MAX))
  {
    throw MalformedDocument(0, "document too large");
  }

  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser)
  {
    throw std::bad_alloc();
  }

  BuildState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetStartDoctypeDeclHandler(parser.get(), on_doctype);

  auto const status =
      XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  int const line = static_cast<int>(XML_GetCurrentLineNumber(parser.get()));
  if (state.abort_reason)
  {
    throw MalformedDocument(line, *state.abort_reason);
  }
  if (status != XML_STATUS_OK)
  {
    throw MalformedDocument(line, XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!state.root)
  {
    throw MalformedDocument(line, "no root element");
  }
  return std::move(*state.root);
}

std::string escape(std::string_view text)
{
  std::string out;
  out.reserve(text.size());
  for (char const c : text)
  {
    switch (c)
    {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    case '\'':
      out += "&apos;";
      break;
    case '\t':
      out += "&#9;";
      break;
    case '\n':
      out += "&#10;";
      break;
    case '\r':
      out += "&#13;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

bool is_representable(std::string_view text)
{
  std::size_t i = 0;
  while (i < text.size())
  {
    auto const   lead = static_cast<unsigned char>(text[i]);
    std::size_t  len  = 0;
    char32_t     cp   = 0;
    if (lead < 0x80)
    {
      len = 1;
      cp  = lead;
    }
    else if ((lead & 0xE0) == 0xC0)
    {
      len = 2;
      cp  = lead & 0x1F;
    }
    else if ((lead & 0xF0) == 0xE0)
    {
      len = 3;
      cp  = lead & 0x0F;
    }
    else if ((lead & 0xF8) == 0xF0)
    {
      len = 4;
      cp  = lead & 0x07;
    }
    else
    {
      return false;
    }
    if (i + len > text.size())
    {
      return false;
    }
    for (std::size_t k = 1; k < len; ++k)
    {
      auto const cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80)
      {
        return false;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    // Reject overlong encodings.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
    {
      return false;
    }
    bool const allowed = cp == 0x9 || cp == 0xA || cp == 0xD || (cp >= 0x20 && cp <= 0xD7FF) ||
                         (cp >= 0xE000 && cp <= 0xFFFD) || (cp >= 0x10000 && cp <= 0x10FFFF);
    if (!allowed)
    {
      return false;
    }
    i += len;
  }
  return true;
}

}  // namespace agora::ingest::xml
