#include "kgqa/lexicons.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace kgqa::lexicon {
namespace {

constexpr std::string_view kClosedClassVerbs[] = {
    "am", "is", "are", "was", "were", "be", "been", "being", "has", "have", "had", "having",
    "do", "does", "did", "done", "doing", "can", "could", "will", "would", "shall", "should",
    "may", "might", "must", "gets", "got", "gotten", "goes", "went", "gone", "makes", "made",
    "takes", "took", "taken", "gives", "gave", "given", "sees", "saw", "seen", "knows", "knew",
    "known", "feels", "felt", "thinks", "thought", "says", "said", "finds", "found", "tells",
    "told", "becomes", "became", "leaves", "left", "brings", "brought", "begins", "began",
    "begun", "keeps", "kept", "holds", "held", "stands", "stood", "hears", "heard", "runs",
    "ran", "meets", "met", "pays", "paid", "sits", "sat", "speaks", "spoke", "spoken", "lies",
    "lay", "leads", "led", "reads", "grows", "grew", "grown", "loses", "lost", "falls", "fell",
    "fallen", "sends", "sent", "builds", "built", "spends", "spent", "wins", "won", "buys",
    "bought", "eats", "ate", "eaten", "drinks", "drank", "drunk", "drives", "drove", "driven",
    "sleeps", "slept", "wakes", "woke", "woken", "writes", "wrote", "written", "sings", "sang",
    "sung", "swims", "swam", "flies", "flew", "flown", "fights", "fought", "teaches", "taught",
    "catches", "caught", "sells", "sold", "breaks", "broke", "broken", "chooses", "chose",
    "chosen", "wears", "wore", "worn", "hurts", "cries", "cried", "tries", "tried", "dies",
    "died", "hides", "hid", "hidden", "throws", "threw", "thrown", "forgets", "forgot",
    "forgotten", "forgives", "forgave", "understands", "understood", "stays", "stayed",
};

constexpr std::string_view kBaseVerbs[] = {
    "accept", "achieve", "act", "add", "admire", "admit", "agree", "allow", "answer", "apologize",
    "appear", "apply", "argue", "arrive", "ask", "attack", "attend", "avoid", "bake", "be",
    "beat", "become", "beg", "begin", "believe", "belong", "betray", "blame", "borrow", "break",
    "breathe", "bring", "build", "burn", "buy", "call", "calm", "care", "carry", "catch",
    "celebrate", "change", "chase", "cheat", "check", "cheer", "choose", "clean", "climb",
    "close", "collect", "come", "comfort", "compete", "complain", "complete", "consider",
    "continue", "cook", "cry", "dance", "decide", "defend", "deliver", "depend", "describe",
    "deserve", "destroy", "die", "discover", "discuss", "do", "drag", "draw", "dress", "drink",
    "drive", "drop", "earn", "eat", "embarrass", "encourage", "end", "enjoy", "enter", "escape",
    "excite", "expect", "explain", "fail", "fall", "feed", "feel", "fight", "fill", "find",
    "finish", "fix", "fly", "follow", "forget", "forgive", "gain", "get", "give", "go", "grab",
    "graduate", "greet", "grow", "guess", "hang", "happen", "hate", "have", "hear", "help",
    "hide", "hit", "hold", "hope", "hug", "hurry", "hurt", "ignore", "imagine", "impress",
    "improve", "include", "insult", "invite", "join", "joke", "jump", "keep", "kick", "kill",
    "kiss", "know", "laugh", "lead", "learn", "leave", "lend", "let", "lie", "like", "listen",
    "live", "look", "lose", "love", "make", "marry", "meet", "miss", "move", "need", "notice",
    "obey", "offer", "open", "order", "owe", "own", "paint", "pass", "pay", "perform", "pick",
    "plan", "play", "please", "practice", "praise", "pray", "prepare", "pretend", "prevent",
    "promise", "protect", "prove", "pull", "punish", "push", "put", "quit", "rain", "reach",
    "read", "realize", "receive", "recover", "refuse", "relax", "relieve", "rely", "remember",
    "remind", "repeat", "reply", "report", "rescue", "respect", "rest", "return", "reward",
    "ride", "ring", "rise", "risk", "run", "rush", "save", "say", "scare", "score", "scream",
    "search", "see", "seem", "sell", "send", "serve", "settle", "shake", "share", "shop",
    "shout", "show", "sign", "sing", "sit", "sleep", "smile", "solve", "speak", "spend",
    "stand", "start", "stay", "steal", "stop", "study", "succeed", "suffer", "suggest",
    "support", "surprise", "swim", "take", "talk", "taste", "teach", "tease", "tell", "thank",
    "think", "throw", "touch", "train", "travel", "treat", "trust", "try", "turn", "understand",
    "upset", "use", "visit", "wait", "wake", "walk", "want", "wash", "watch", "wear", "win",
    "wish", "wonder", "work", "worry", "write", "yell",
};

// NLTK English stopword list.
constexpr std::string_view kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
    "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that", "that'll",
    "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about", "against",
    "between", "into", "through", "during", "before", "after", "above", "below", "to", "from",
    "up", "down", "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "don't", "should", "should've", "now",
    "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn",
    "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn",
    "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan",
    "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't",
    "wouldn", "wouldn't",
};

// Gender-neutral names common in crowdsourced social commonsense data, plus
// frequent English first names.
constexpr std::string_view kFirstNames[] = {
    "Addison", "Alex", "Ash", "Aubrey", "Austin", "Bailey", "Blake", "Cameron", "Carson",
    "Casey", "Charlie", "Dakota", "Drew", "Elliot", "Emerson", "Finley", "Harper", "Jan",
    "Jesse", "Jordan", "Kai", "Kendall", "Lee", "Logan", "Morgan", "Parker", "Quinn", "Reese",
    "Remy", "Riley", "Robin", "Rowan", "Sage", "Sasha", "Skylar", "Sydney", "Taylor", "Tracy",
    "Avery", "Jamie", "Jody", "Kerry", "Peyton", "Shannon", "Tatum",
    "Aaron", "Adam", "Alan", "Albert", "Alice", "Amanda", "Amy", "Andrea", "Andrew", "Angela",
    "Ann", "Anna", "Anne", "Anthony", "Arthur", "Ashley", "Barbara", "Ben", "Benjamin", "Beth",
    "Betty", "Bill", "Bob", "Bobby", "Brad", "Brandon", "Brenda", "Brian", "Bruce", "Carl",
    "Carol", "Caroline", "Catherine", "Chad", "Charles", "Chris", "Christina", "Christine",
    "Christopher", "Cindy", "Claire", "Craig", "Cynthia", "Dan", "Daniel", "Danny", "David",
    "Dave", "Deborah", "Debra", "Dennis", "Diana", "Diane", "Donald", "Donna", "Doris",
    "Dorothy", "Doug", "Douglas", "Dylan", "Ed", "Edward", "Elizabeth", "Ellen", "Emily",
    "Emma", "Eric", "Ethan", "Eva", "Evan", "Frank", "Fred", "Gary", "George", "Gina", "Gloria",
    "Grace", "Greg", "Gregory", "Hannah", "Harold", "Harry", "Heather", "Helen", "Henry",
    "Ian", "Isaac", "Jack", "Jackie", "Jacob", "Jake", "James", "Jane", "Janet", "Jason",
    "Jean", "Jeff", "Jeffrey", "Jen", "Jennifer", "Jenny", "Jeremy", "Jerry", "Jessica", "Jill",
    "Jim", "Jimmy", "Joan", "Joe", "Joel", "John", "Johnny", "Jon", "Jonathan", "Joseph", "Josh",
    "Joshua", "Joyce", "Judy", "Julia", "Julie", "Justin", "Karen", "Kate", "Katherine",
    "Kathy", "Katie", "Keith", "Kelly", "Ken", "Kenneth", "Kevin", "Kim", "Kimberly", "Kyle",
    "Larry", "Laura", "Lauren", "Linda", "Lisa", "Liz", "Lori", "Louis", "Lucy", "Luke",
    "Lynn", "Maria", "Marie", "Mark", "Martha", "Martin", "Mary", "Matt", "Matthew", "Megan",
    "Melissa", "Michael", "Michelle", "Mike", "Nancy", "Natalie", "Nathan", "Neil", "Nicholas",
    "Nick", "Nicole", "Noah", "Oliver", "Olivia", "Pam", "Pamela", "Pat", "Patricia",
    "Patrick", "Paul", "Peter", "Phil", "Philip", "Rachel", "Ralph", "Randy", "Ray", "Raymond",
    "Rebecca", "Richard", "Rick", "Rob", "Robert", "Roger", "Ron", "Ronald", "Rose", "Roy",
    "Russell", "Ruth", "Ryan", "Sally", "Sam", "Samantha", "Samuel", "Sandra", "Sara", "Sarah",
    "Scott", "Sean", "Sharon", "Shawn", "Sophia", "Stephanie", "Stephen", "Steve", "Steven",
    "Sue", "Susan", "Ted", "Teresa", "Terry", "Thomas", "Tim", "Timothy", "Tina", "Todd", "Tom",
    "Tommy", "Tony", "Tyler", "Victoria", "Vincent", "Walter", "Wayne", "William", "Zach",
    "Zoe",
};

constexpr std::pair<std::string_view, std::string_view> kIrregular[] = {
    {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"},
    {"has", "have"}, {"had", "have"}, {"does", "do"}, {"did", "do"}, {"done", "do"},
    {"goes", "go"}, {"went", "go"}, {"gone", "go"}, {"got", "get"}, {"gotten", "get"},
    {"made", "make"}, {"took", "take"}, {"taken", "take"}, {"gave", "give"}, {"given", "give"},
    {"saw", "see"}, {"seen", "see"}, {"knew", "know"}, {"known", "know"}, {"felt", "feel"},
    {"thought", "think"}, {"said", "say"}, {"found", "find"}, {"told", "tell"},
    {"became", "become"}, {"left", "leave"}, {"brought", "bring"}, {"began", "begin"},
    {"begun", "begin"}, {"kept", "keep"}, {"held", "hold"}, {"stood", "stand"},
    {"heard", "hear"}, {"ran", "run"}, {"met", "meet"}, {"paid", "pay"}, {"sat", "sit"},
    {"spoke", "speak"}, {"spoken", "speak"}, {"led", "lead"}, {"grew", "grow"},
    {"grown", "grow"}, {"lost", "lose"}, {"fell", "fall"}, {"fallen", "fall"}, {"sent", "send"},
    {"built", "build"}, {"spent", "spend"}, {"won", "win"}, {"bought", "buy"}, {"ate", "eat"},
    {"eaten", "eat"}, {"drank", "drink"}, {"drunk", "drink"}, {"drove", "drive"},
    {"driven", "drive"}, {"slept", "sleep"}, {"woke", "wake"}, {"woken", "wake"},
    {"wrote", "write"}, {"written", "write"}, {"sang", "sing"}, {"sung", "sing"},
    {"swam", "swim"}, {"flew", "fly"}, {"flown", "fly"}, {"fought", "fight"},
    {"taught", "teach"}, {"caught", "catch"}, {"sold", "sell"}, {"broke", "break"},
    {"broken", "break"}, {"chose", "choose"}, {"chosen", "choose"}, {"wore", "wear"},
    {"worn", "wear"}, {"hid", "hide"}, {"hidden", "hide"}, {"threw", "throw"},
    {"thrown", "throw"}, {"forgot", "forget"}, {"forgotten", "forget"},
    {"forgave", "forgive"}, {"understood", "understand"},
};

template <std::size_t N>
std::unordered_set<std::string_view> as_set(const std::string_view (&arr)[N]) {
  return {std::begin(arr), std::end(arr)};
}

}  // namespace

bool is_closed_class_verb(std::string_view word) {
  static const auto set = as_set(kClosedClassVerbs);
  return set.contains(word);
}

bool is_base_verb(std::string_view word) {
  static const auto set = as_set(kBaseVerbs);
  return set.contains(word);
}

bool is_stopword(std::string_view word) {
  static const auto set = as_set(kStopwords);
  return set.contains(word);
}

bool is_first_name(std::string_view word) {
  static const auto set = as_set(kFirstNames);
  return set.contains(word);
}

std::optional<std::string_view> irregular_base(std::string_view word) {
  static const std::unordered_map<std::string_view, std::string_view> map(std::begin(kIrregular),
                                                                          std::end(kIrregular));
  auto it = map.find(word);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

std::span<const std::string_view> first_names() { return kFirstNames; }
std::span<const std::string_view> stopwords() { return kStopwords; }

}  // namespace kgqa::lexicon
