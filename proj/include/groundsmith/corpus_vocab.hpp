#pragma once

// Word lists for the seen and unseen corpora. The two splits share no word.

#include <string>
#include <vector>

namespace groundsmith::vocab {

inline const std::vector<std::string>& seen_colors() {
  static const std::vector<std::string> v{
      "red", "blue", "green", "yellow", "purple", "orange", "pink", "black", "white", "brown",
      "gray", "violet", "indigo", "cyan", "magenta", "maroon", "navy", "teal", "olive", "beige",
      "crimson", "scarlet", "turquoise", "lavender",
  };
  return v;
}

inline const std::vector<std::string>& unseen_colors() {
  static const std::vector<std::string> v{
      "amber", "azure", "bronze", "burgundy", "cerulean", "charcoal", "chartreuse", "cobalt",
      "copper", "coral", "emerald", "fuchsia", "ivory", "jade", "khaki", "lilac", "mauve", "ochre",
      "periwinkle", "saffron", "sapphire", "sepia", "taupe", "vermilion",
  };
  return v;
}

inline const std::vector<std::string>& seen_containers() {
  static const std::vector<std::string> v{
      "box", "bucket", "bag", "basket", "crate", "bin", "tub", "jar", "pail", "tray", "chest",
      "trunk", "barrel", "carton", "case", "pouch", "sack", "tin", "vase", "bowl", "pot", "pan",
      "drawer", "cabinet", "locker", "hamper", "cooler", "kettle", "mug", "cup", "pitcher",
      "canister", "suitcase", "backpack", "purse", "wallet",
  };
  return v;
}

inline const std::vector<std::string>& unseen_containers() {
  static const std::vector<std::string> v{
      "urn", "coffer", "casket", "satchel", "knapsack", "duffel", "tote", "valise", "flask",
      "decanter", "carafe", "beaker", "cauldron", "crock", "firkin", "hogshead", "keg", "cask",
      "caddy", "bassinet", "cradle", "hopper", "scuttle", "trough", "ewer", "tureen", "terrine",
      "ramekin", "skillet", "wok",
  };
  return v;
}

inline const std::vector<std::string>& seen_rooms() {
  static const std::vector<std::string> v{
      "bedroom", "kitchen", "bathroom", "garage", "attic", "basement", "hallway", "closet",
      "pantry", "study", "library", "office", "nursery", "foyer", "porch", "patio", "garden",
      "yard", "den", "lounge", "parlor", "playroom", "laundry", "workshop", "studio", "gym",
      "cellar", "loft", "balcony", "veranda", "conservatory", "greenhouse", "shed", "barn",
      "stable", "mudroom", "sunroom", "lobby", "corridor", "vestibule", "dining", "classroom",
      "lab", "storeroom", "warehouse", "terrace", "courtyard", "atrium", "gallery", "chapel",
  };
  return v;
}

inline const std::vector<std::string>& unseen_rooms() {
  static const std::vector<std::string> v{
      "armory", "aviary", "bakery", "boathouse", "bunker", "cabin", "canteen", "cloakroom",
      "cockpit", "crypt", "dormitory", "dungeon", "galley", "gazebo", "granary", "hangar",
      "infirmary", "kiln", "larder", "mezzanine", "observatory", "orangery", "pavilion", "pergola",
      "pharmacy", "planetarium", "quarry", "rotunda", "sacristy", "sauna", "scullery", "silo",
      "solarium", "spa", "stockroom", "tavern", "theater", "tower", "turret", "vault", "vineyard",
      "wardroom", "washroom", "winery", "boudoir", "buttery", "chancel", "garret", "kitchenette",
      "nave",
  };
  return v;
}

inline const std::vector<std::string>& seen_locations() {
  static const std::vector<std::string> v{
      "park", "cvs", "bank", "school", "museum", "store", "hospital", "church", "cafe",
      "restaurant", "station", "airport", "stadium", "mall", "market", "drugstore", "cinema", "zoo",
      "aquarium", "beach", "harbor", "pier", "bridge", "fountain", "plaza", "square", "university",
      "college", "hotel", "motel", "arena", "casino", "courthouse", "firehouse", "lighthouse",
      "marina", "monument", "playground", "pool", "prison", "temple", "walmart",
  };
  return v;
}

inline const std::vector<std::string>& unseen_locations() {
  static const std::vector<std::string> v{
      "kroger", "costco", "safeway", "walgreens", "ikea", "cathedral", "mosque", "synagogue",
      "embassy", "consulate", "seaport", "heliport", "racetrack", "ballpark", "boardwalk",
      "carnival", "fairground", "greenway", "promenade", "riverfront", "skatepark", "velodrome",
      "waterfront",
  };
  return v;
}

inline const std::vector<std::string>& seen_toys() {
  static const std::vector<std::string> v{
      "ball", "sphere", "cylinder", "cube", "block", "cone", "pyramid", "ring", "doll", "car",
      "truck", "train", "plane", "boat", "robot", "teddy", "puzzle", "kite", "yoyo", "top", "drum",
      "whistle", "rattle", "marble", "domino", "dice", "card", "crayon", "marker", "pencil",
      "eraser", "ruler", "book", "apple", "banana", "pear", "plum", "grape", "lemon", "lime",
      "peach", "cherry", "melon", "carrot", "potato", "tomato", "onion", "pepper", "cucumber",
      "spoon", "fork", "knife", "plate", "napkin", "towel", "sock", "shoe", "hat", "glove", "scarf",
      "mitten", "button", "bead", "coin", "key", "lock", "bell", "candle", "clock", "watch", "lamp",
      "bulb", "battery", "phone", "remote", "camera", "radio", "speaker", "headphone", "cable",
      "charger", "mouse", "keyboard", "tablet", "laptop", "brush", "comb", "mirror", "soap",
      "sponge", "bottle", "cork", "lid", "cap", "straw", "balloon", "feather", "pebble", "rock",
      "shell", "stick", "leaf", "acorn", "pinecone", "flower", "tulip", "daisy", "ribbon", "string",
      "rope", "chain", "hook", "nail", "screw", "bolt", "nut", "washer", "hammer", "wrench",
      "pliers", "saw", "drill", "tape", "glue", "scissors", "stapler", "clip", "pin", "needle",
      "thread", "yarn", "pillow", "blanket", "quilt", "cushion", "rug", "mat", "frame", "poster",
      "sticker", "stamp", "envelope", "letter", "magnet", "compass", "globe", "map", "flag",
      "trophy", "medal", "badge", "crown", "wand", "sword", "shield", "helmet", "mask", "puppet",
      "figurine", "statue", "horse", "dinosaur", "dragon", "unicorn", "bear", "rabbit", "duck",
      "frog", "turtle", "fish", "whale", "shark", "octopus", "penguin", "owl", "eagle", "parrot",
      "lion", "tiger", "elephant", "giraffe", "zebra", "monkey", "panda", "koala", "kangaroo",
      "fox", "wolf", "deer", "moose", "pig", "cow", "sheep", "goat", "chicken", "cat", "dog",
      "puppy", "kitten", "hamster", "snail", "spider", "bee", "butterfly", "ladybug", "worm",
      "racket", "bat", "skateboard", "scooter", "bicycle", "helicopter", "rocket", "submarine",
      "tractor", "bus", "taxi", "ambulance", "jeep", "wagon", "sled", "canoe", "raft", "xylophone",
      "guitar", "violin", "flute", "trumpet", "harmonica", "piano", "banjo", "tambourine", "maraca",
      "cymbal", "triangle", "gear", "spring", "wheel", "tire", "shovel", "rake", "hoop", "seesaw",
      "whirligig", "pogo", "bauble", "trinket", "gizmo", "widget", "spinner",
  };
  return v;
}

inline const std::vector<std::string>& unseen_toys() {
  static const std::vector<std::string> v{
      "abacus", "accordion", "anvil", "armadillo", "avocado", "axe", "bagel", "baguette", "bandana",
      "barometer", "baton", "beanie", "binoculars", "biscuit", "blender", "bonnet", "boomerang",
      "bracelet", "brooch", "buckle", "burrito", "cactus", "calculator", "calendar", "cannon",
      "carousel", "cassette", "catapult", "cello", "chalk", "chandelier", "cheetah", "chisel",
      "clarinet", "coconut", "cookie", "corkscrew", "croissant", "cupcake", "dagger", "dartboard",
      "donut", "dumbbell", "earring", "easel", "eggplant", "falcon", "ferret", "fiddle", "flamingo",
      "flashlight", "fossil", "frisbee", "gadget", "gazelle", "gecko", "gong", "gorilla",
      "gramophone", "hammock", "harp", "hedgehog", "hippo", "hourglass", "iguana", "jellyfish",
      "joystick", "kazoo", "kiwi", "ladle", "lantern", "lemur", "lizard", "lobster", "locket",
      "lollipop", "lute", "macaron", "mandolin", "mango", "metronome", "microscope", "mitt",
      "muffin", "necklace", "nutcracker", "oboe", "ocarina", "otter", "paddle", "paintbrush",
      "pancake", "papaya", "pelican", "pendant", "pendulum", "periscope", "pickle", "piccolo",
      "pinwheel", "pistachio", "platypus", "pretzel", "prism", "propeller", "pumpkin", "quill",
      "raccoon", "radish", "raisin", "rhino", "saddle", "sandal", "saxophone", "scarecrow",
      "seahorse", "sextant", "sitar", "slingshot", "slipper", "snorkel", "sombrero", "spatula",
      "squid", "starfish", "stethoscope", "sundial", "sunflower", "surfboard", "tadpole", "teacup",
      "teapot", "telescope", "thermometer", "thimble", "toaster", "toboggan", "tomahawk", "toucan",
      "trowel", "tuba", "turnip", "ukulele", "umbrella", "vulture", "waffle", "walnut", "walrus",
      "weasel", "wheelbarrow", "windmill", "wombat", "yak", "zeppelin", "zucchini", "anchor",
      "antler", "apron", "artichoke", "asparagus", "bagpipe", "banner", "barbell", "beetle",
      "bonsai", "bookmark", "broccoli", "bugle", "cabbage", "camel", "candlestick", "caterpillar",
      "celery", "chameleon", "chipmunk", "cobra", "cricket", "crowbar", "cufflink", "dolphin",
      "dreidel", "dustpan", "eggbeater", "gargoyle", "garlic", "goblet", "goggles", "gumball",
      "hacksaw", "harpoon", "hatchet", "honeycomb", "igloo", "jackknife", "jigsaw", "kayak",
      "ladder", "lasso", "llama", "magnifier", "mallet", "manatee", "marionette", "meteorite",
      "mongoose", "mortar", "moccasin", "narwhal", "nectarine", "okapi", "oyster", "panther",
      "parsnip", "pestle", "piggybank", "pinata", "plunger", "porcupine", "quokka", "quiver",
      "rattlesnake", "salamander", "sardine", "scallop", "scepter", "seashell", "shuttlecock",
      "skittle", "snowglobe", "spindle", "stopwatch", "tangerine", "tiara", "trombone", "tortoise",
      "typewriter",
  };
  return v;
}

}  // namespace groundsmith::vocab
