#include "graft/synth.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "graft/strsim.hpp"

namespace graft {

namespace {

constexpr std::string_view kMaleNames[] = {
    "john",    "william", "thomas",  "james",   "robert",  "richard",
    "george",  "charles", "henry",   "edward",  "joseph",  "samuel",
    "david",   "peter",   "michael", "daniel",  "benjamin", "francis",
    "walter",  "arthur",  "albert",  "frederick", "hugh",  "ralph",
    "nicholas", "andrew", "anthony", "stephen", "matthew", "philip",
    "lawrence", "edmund", "gilbert", "roger",   "simon",   "martin",
    "patrick", "harold",  "leonard", "alexander", "christopher", "jacob",
    "isaac",   "abraham", "elias",   "oliver",  "lewis",   "nathaniel",
    "timothy", "gregory", "bernard", "vincent", "eugene",  "herbert",
    "oscar",   "victor",  "cornelius", "theodore", "augustus", "ambrose",
};

constexpr std::string_view kFemaleNames[] = {
    "mary",     "elizabeth", "anne",     "margaret", "sarah",    "catherine",
    "jane",     "alice",     "ellen",    "susanna",  "martha",   "hannah",
    "eleanor",  "dorothy",   "frances",  "agnes",    "isabel",   "rebecca",
    "rachel",   "judith",    "joan",     "barbara",  "lucy",     "emily",
    "charlotte", "louisa",   "harriet",  "caroline", "amelia",   "florence",
    "beatrice", "matilda",   "cecily",   "edith",    "grace",    "helen",
    "rose",     "esther",    "abigail",  "priscilla", "deborah", "lydia",
    "phoebe",   "julia",     "clara",    "sophia",   "victoria", "adelaide",
    "bridget",  "winifred",  "gertrude", "mabel",    "ruth",     "naomi",
    "marion",   "theresa",   "veronica", "olive",    "irene",    "josephine",
};

constexpr std::string_view kSurnames[] = {
    "smith",    "jones",    "taylor",   "brown",    "williams", "wilson",
    "johnson",  "davies",   "robinson", "wright",   "thompson", "evans",
    "walker",   "white",    "roberts",  "green",    "hall",     "wood",
    "jackson",  "clarke",   "baker",    "harris",   "lewis",    "martin",
    "cooper",   "hill",     "ward",     "morris",   "moore",    "clark",
    "lee",      "king",     "turner",   "parker",   "carter",   "phillips",
    "mitchell", "scott",    "young",    "allen",    "watson",   "edwards",
    "cook",     "morgan",   "bell",     "murphy",   "bailey",   "price",
    "fisher",   "hughes",   "mason",    "kelly",    "russell",  "gray",
    "fletcher", "webster",  "barker",   "palmer",   "dixon",    "holmes",
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }
  char letter() { return static_cast<char>('a' + below(26)); }

 private:
  std::mt19937_64 engine_;
};

std::string capitalize(std::string_view name) {
  std::string out(name);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

std::string mutate_once(std::string s, Rng& rng) {
  switch (rng.below(4)) {
    case 0:
      s[rng.below(s.size())] = rng.letter();
      break;
    case 1:
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(rng.below(s.size() + 1)),
               rng.letter());
      break;
    case 2:
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(rng.below(s.size())));
      break;
    default:
      if (s.size() >= 2) {
        const auto i = rng.below(s.size() - 1);
        std::swap(s[i], s[i + 1]);
      }
      break;
  }
  return s;
}

struct Person {
  std::string forename;
  std::string base;
  bool male = true;
  std::size_t index = 0;  // into profiles
};

class Generator {
 public:
  explicit Generator(const SyntheticOptions& options)
      : options_(options), rng_(options.seed) {
    for (auto n : kMaleNames) reserved_.emplace(n);
    for (auto n : kFemaleNames) reserved_.emplace(n);
    for (auto n : kMaleNames) plant_variants(n);
    for (auto n : kFemaleNames) plant_variants(n);
  }

  SyntheticGenealogy run() {
    for (std::size_t f = 0; f < options_.families; ++f) family(f);
    for (auto& [base, variants] : used_variants_) {
      out_.truth.push_back({base, std::move(variants)});
    }
    return std::move(out_);
  }

 private:
  void plant_variants(std::string_view base) {
    const std::size_t count = 1 + rng_.below(3);
    auto& pool = variants_[std::string(base)];
    for (std::size_t attempt = 0; pool.size() < count && attempt < 100;
         ++attempt) {
      std::string v = mutate_once(std::string(base), rng_);
      if (rng_.chance(0.5)) v = mutate_once(std::move(v), rng_);
      const int d = edit_distance(base, v);
      if (d < 1 || d > 2 || v.size() < 2 || reserved_.count(v)) continue;
      reserved_.insert(v);
      pool.push_back(std::move(v));
    }
  }

  std::string_view random_base(bool male) {
    return male ? kMaleNames[rng_.below(std::size(kMaleNames))]
                : kFemaleNames[rng_.below(std::size(kFemaleNames))];
  }

  std::string_view random_surname() {
    return kSurnames[rng_.below(std::size(kSurnames))];
  }

  Person add(std::size_t family, std::string base, bool male,
             std::string_view surname, const Person* father,
             const Person* mother, bool allow_variant) {
    Person p;
    p.male = male;
    p.base = std::move(base);
    p.forename = p.base;
    const auto& pool = variants_[p.base];
    if (allow_variant && !pool.empty() && rng_.chance(options_.variant_rate)) {
      p.forename = pool[rng_.below(pool.size())];
      used_variants_[p.base].insert(p.forename);
    }
    p.index = out_.profiles.size();
    RawProfile raw;
    raw.id = fmt::format("f{}_{}", family, counter_++);
    raw.forename = capitalize(p.forename);
    raw.surname = capitalize(surname);
    if (father) raw.father_id = out_.profiles[father->index].id;
    if (mother) raw.mother_id = out_.profiles[mother->index].id;
    out_.profiles.push_back(std::move(raw));
    return p;
  }

  // Picks the ancestor whose name a child of the given sex inherits: the
  // same-sex parent usually, otherwise a same-sex grandparent.
  std::string inherited_base(bool male, const Person& father,
                             const Person& mother,
                             const std::vector<const Person*>& grandparents) {
    std::vector<const Person*> pool;
    const Person& parent = male ? father : mother;
    pool.insert(pool.end(), 3, &parent);
    for (const Person* g : grandparents) {
      if (g->male == male) pool.push_back(g);
    }
    return pool[rng_.below(pool.size())]->base;
  }

  void descend(std::size_t family, const Person& father, const Person& mother,
               const std::vector<const Person*>& grandparents, int generation) {
    if (generation >= options_.generations) return;
    const std::string surname = out_.profiles[father.index].surname;
    const std::size_t children = 1 + rng_.below(3);
    for (std::size_t c = 0; c < children; ++c) {
      const bool male = rng_.chance(0.5);
      std::string base =
          rng_.chance(kUnrelatedNameRate)
              ? std::string(random_base(male))
              : inherited_base(male, father, mother, grandparents);
      Person child =
          add(family, std::move(base), male, surname, &father, &mother, true);
      if (generation + 1 >= options_.generations) continue;
      Person spouse = add(family, std::string(random_base(!male)), !male,
                          random_surname(), nullptr, nullptr, false);
      const std::vector<const Person*> next_grandparents = {&father, &mother};
      if (male) {
        descend(family, child, spouse, next_grandparents, generation + 1);
      } else {
        descend(family, spouse, child, next_grandparents, generation + 1);
      }
    }
  }

  void family(std::size_t f) {
    counter_ = 0;
    const std::string_view surname = random_surname();
    Person father = add(f, std::string(random_base(true)), true, surname,
                        nullptr, nullptr, false);
    Person mother = add(f, std::string(random_base(false)), false,
                        random_surname(), nullptr, nullptr, false);
    descend(f, father, mother, {}, 1);
  }

  static constexpr double kUnrelatedNameRate = 0.3;

  SyntheticOptions options_;
  Rng rng_;
  std::set<std::string> reserved_;
  std::map<std::string, std::vector<std::string>> variants_;
  std::map<std::string, std::set<std::string>> used_variants_;
  SyntheticGenealogy out_;
  std::size_t counter_ = 0;
};

}  // namespace

void SyntheticOptions::validate() const {
  if (generations < 2) {
    throw std::invalid_argument("synthetic genealogy needs at least 2 generations");
  }
  if (!(variant_rate > 0.0 && variant_rate <= 1.0)) {
    throw std::invalid_argument("variant rate must lie in (0, 1]");
  }
}

SyntheticGenealogy generate_synthetic_genealogy(
    const SyntheticOptions& options) {
  options.validate();
  return Generator(options).run();
}

}  // namespace graft
