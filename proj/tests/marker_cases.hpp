#pragma once

// Hand-counted connective fixture. Sentences are separated by " | ",
// tokens by single spaces; any connective not listed counts 0.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "storyscope/corpus.hpp"

struct MarkerCase {
    std::string text;
    std::map<std::string, std::size_t> expected;
};

inline const std::vector<MarkerCase>& marker_cases() {
    static const std::vector<MarkerCase> cases{
        {"but then , even though it rained , then we left", {{"but", 1}, {"then", 2}, {"even though", 1}}},
        {"and then we ate", {{"then", 1}}},
        {"AND so it went", {{"so", 1}}},
        {"However , we stayed", {{"however", 1}}},
        {"as soon as she arrived we left", {{"as soon as", 1}}},
        {"as soon she said", {{"as", 1}}},
        {"if then else", {{"if then", 1}}},
        {"if it rains then we stay", {{"if", 1}, {"then", 1}}},
        {"so that we could see", {{"so that", 1}}},
        {"so , that was it", {{"so", 1}}},
        {"even if it is late", {{"even if", 1}}},
        {"even the dog knew", {}},
        {"For Example the cat", {{"for example", 1}}},
        {"for the example", {}},
        {"in fact , in turn , in contrast", {{"in fact", 1}, {"in turn", 1}, {"in contrast", 1}}},
        {"in addition to that", {{"in addition", 1}}},
        {"as a result we left", {{"as a result", 1}}},
        {"as a child I ran", {{"as", 1}}},
        {"it looked as if it would rain", {{"as if", 1}}},
        {"As Though nothing happened", {{"as though", 1}}},
        {"though it was late", {{"though", 1}}},
        {"now that you are here", {{"now that", 1}}},
        {"now we go and and and", {}},
        {"he came back | later he left | then | finally", {{"later", 1}, {"then", 1}, {"finally", 1}}},
        {"it was even | though it rained", {{"though", 1}}},
        {"as long as you stay", {{"as long as", 1}}},
        {"BUT But but", {{"but", 3}}},
        {"meanwhile , thus , therefore , moreover", {{"meanwhile", 1}, {"thus", 1}, {"therefore", 1}, {"moreover", 1}}},
        {"", {}},
        {"since until after before while because as as if then then",
         {{"since", 1}, {"until", 1}, {"after", 1}, {"before", 1}, {"while", 1}, {"because", 1}, {"as", 1},
          {"as if", 1}, {"then", 2}}},
    };
    return cases;
}

inline std::vector<storyscope::Sentence> case_sentences(const std::string& text) {
    std::vector<storyscope::Sentence> out;
    std::istringstream in(text);
    storyscope::Sentence cur;
    for (std::string t; in >> t;) {
        if (t == "|") {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(t);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline storyscope::Document case_document(const std::string& id, const std::string& text) {
    storyscope::Document d;
    d.id = id;
    d.author_id = "fixture";
    d.label = "fixture";
    d.source = "fixture";
    d.raw_text = text;
    d.sentences = case_sentences(text);
    d.recount();
    return d;
}
