#!/usr/bin/env python3
"""Regenerate include/storyscope/resources.hpp from the files under data/."""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
FILES = [
    ("kStopwordsEn", "stopwords_en.txt"),
    ("kFunctionWords", "function_words.txt"),
    ("kDreamBlocklist", "blocklist.txt"),
    ("kConnectives", "connectives.txt"),
    ("kPosLexicon", "pos_lexicon.tsv"),
]

out = [
    "#pragma once",
    "",
    "// Generated by tools/embed_resources.py from data/. Do not edit by hand;",
    "// tests/test_resources.cpp checks that the two copies agree.",
    "",
    "#include <string_view>",
    "",
    "namespace storyscope::resources {",
    "",
]
for name, fname in FILES:
    text = (ROOT / "data" / fname).read_text()
    out.append(f"// data/{fname}")
    out.append(f'inline constexpr std::string_view {name} = R"__({text})__";')
    out.append("")
out.append("}  // namespace storyscope::resources")
(ROOT / "include" / "storyscope" / "resources.hpp").write_text("\n".join(out) + "\n")
