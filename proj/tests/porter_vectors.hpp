#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tw_test {

// Outputs of NLTK's PorterStemmer in ORIGINAL_ALGORITHM mode.
inline const std::vector<std::pair<std::string, std::string>> kPorterVectors = {
    {"caresses", "caress"},
    {"ponies", "poni"},
    {"ties", "ti"},
    {"caress", "caress"},
    {"cats", "cat"},
    {"feed", "feed"},
    {"agreed", "agre"},
    {"plastered", "plaster"},
    {"bled", "bled"},
    {"motoring", "motor"},
    {"sing", "sing"},
    {"conflated", "conflat"},
    {"troubled", "troubl"},
    {"sized", "size"},
    {"hopping", "hop"},
    {"tanned", "tan"},
    {"falling", "fall"},
    {"hissing", "hiss"},
    {"fizzed", "fizz"},
    {"failing", "fail"},
    {"filing", "file"},
    {"happy", "happi"},
    {"sky", "sky"},
    {"relational", "relat"},
    {"conditional", "condit"},
    {"rational", "ration"},
    {"valenci", "valenc"},
    {"hesitanci", "hesit"},
    {"digitizer", "digit"},
    {"conformabli", "conform"},
    {"radicalli", "radic"},
    {"differentli", "differ"},
    {"vileli", "vile"},
    {"analogousli", "analog"},
    {"vietnamization", "vietnam"},
    {"predication", "predic"},
    {"operator", "oper"},
    {"feudalism", "feudal"},
    {"decisiveness", "decis"},
    {"hopefulness", "hope"},
    {"callousness", "callous"},
    {"formaliti", "formal"},
    {"sensitiviti", "sensit"},
    {"sensibiliti", "sensibl"},
    {"triplicate", "triplic"},
    {"formative", "form"},
    {"formalize", "formal"},
    {"electriciti", "electr"},
    {"electrical", "electr"},
    {"hopeful", "hope"},
    {"goodness", "good"},
    {"revival", "reviv"},
    {"allowance", "allow"},
    {"inference", "infer"},
    {"airliner", "airlin"},
    {"gyroscopic", "gyroscop"},
    {"adjustable", "adjust"},
    {"defensible", "defens"},
    {"irritant", "irrit"},
    {"replacement", "replac"},
    {"adjustment", "adjust"},
    {"dependent", "depend"},
    {"adoption", "adopt"},
    {"homologou", "homolog"},
    {"communism", "commun"},
    {"activate", "activ"},
    {"angulariti", "angular"},
    {"homologous", "homolog"},
    {"effective", "effect"},
    {"bowdlerize", "bowdler"},
    {"probate", "probat"},
    {"rate", "rate"},
    {"cease", "ceas"},
    {"controll", "control"},
    {"roll", "roll"},
    {"generalization", "gener"},
    {"generalizations", "gener"},
    {"operation", "oper"},
    {"operations", "oper"},
    {"operational", "oper"},
    {"service", "servic"},
    {"services", "servic"},
    {"booking", "book"},
    {"bookings", "book"},
    {"booked", "book"},
    {"flights", "flight"},
    {"flight", "flight"},
    {"reservation", "reserv"},
    {"reservations", "reserv"},
    {"invoice", "invoic"},
    {"invoices", "invoic"},
    {"notification", "notif"},
    {"notify", "notifi"},
    {"notified", "notifi"},
    {"payment", "payment"},
    {"payments", "payment"},
    {"searching", "search"},
    {"searched", "search"},
    {"passenger", "passeng"},
    {"passengers", "passeng"},
    {"departure", "departur"},
    {"destination", "destin"},
    {"available", "avail"},
    {"charge", "charg"},
    {"charged", "charg"},
    {"card", "card"},
    {"cards", "card"},
    {"ticket", "ticket"},
    {"tickets", "ticket"},
    {"email", "email"},
    {"emails", "email"},
    {"message", "messag"},
    {"messages", "messag"},
    {"currency", "currenc"},
    {"convert", "convert"},
    {"converted", "convert"},
    {"amount", "amount"},
    {"price", "price"},
    {"fare", "fare"},
    {"fares", "fare"},
    {"record", "record"},
    {"records", "record"},
    {"archive", "archiv"},
    {"lookup", "lookup"},
    {"hotel", "hotel"},
    {"hotels", "hotel"},
    {"airline", "airlin"},
    {"airlines", "airlin"},
    {"number", "number"},
    {"numbers", "number"},
    {"code", "code"},
    {"codes", "code"},
    {"create", "creat"},
    {"created", "creat"},
    {"creating", "creat"},
    {"send", "send"},
    {"sending", "send"},
    {"sent", "sent"},
    {"travel", "travel"},
    {"traveller", "travel"},
    {"generous", "gener"},
    {"generously", "gener"},
    {"agreement", "agreement"}
};

}  // namespace tw_test
