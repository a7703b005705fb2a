//! Bundled vocabulary for the synthetic word-length task: a fixed
//! snapshot of lowercase English words spanning lengths 1-15, so that
//! generated datasets are reproducible without external downloads.

pub(crate) static WORDS: [&str; 1930] = [
    "a", "about", "above", "abs", "absolute", "abstract", "accept", "accepted",
    "accepting", "accepts", "access", "accessed", "accessible",
    "accommodation", "accomplishment", "according", "accumulate", "accurate",
    "acknowledgement", "acquire", "acquired", "action", "actions", "active",
    "acts", "actual", "actually", "add", "added", "adding", "addition",
    "additional", "additionally", "addr", "address", "addresses", "adds",
    "administration", "administrative", "advertisements", "after", "again",
    "ailmsux", "alert", "algorithm", "algorithms", "alias", "aliases",
    "alignment", "alive", "all", "allocated", "allow", "allowed", "allowing",
    "allows", "along", "alpha", "alphabet", "alphabetic", "alphanumeric",
    "already", "also", "alternate", "alternative", "alternatively",
    "alternatives", "altsep", "always", "amount", "an", "ancillary", "and",
    "annotated", "annotation", "annotations", "another", "any", "anything",
    "api", "appear", "appeared", "appears", "append", "appended", "appending",
    "applicable", "application", "apply", "appropriate", "approximately",
    "arbitrary", "architectural", "archive", "are", "argument", "arguments",
    "argv", "arithmetic", "around", "array", "as", "ascii", "ask", "assign",
    "assigned", "assigning", "associated", "assumed", "assuming", "ast", "at",
    "attachment", "attempting", "attrgetter", "attribute", "attributes",
    "audio", "authobject", "available", "avoid", "await", "back", "background",
    "backslash", "backward", "bad", "bar", "base", "based", "bases", "basic",
    "baz", "be", "because", "been", "before", "begin", "beginning", "behave",
    "behavior", "behaviour", "being", "below", "beta", "better", "between",
    "big", "bin", "binary", "bind", "binding", "bit", "bits", "bitwise",
    "blank", "blksize", "block", "blocked", "blocking", "blocks", "blue",
    "body", "boolean", "both", "bottom", "bound", "boundary", "bpnumber",
    "break", "breakpoint", "breakpoints", "breaks", "broadcast", "bud",
    "buffer", "buffered", "buffering", "buffers", "buffersize", "build",
    "built", "builtin", "builtins", "but", "by", "byte", "bytearray",
    "bytecode", "byteorder", "bytes", "bytesio", "cache", "cached",
    "calculate", "calculated", "calendar", "call", "callable", "callables",
    "callback", "callbacks", "called", "caller", "calling", "calls", "can",
    "cancel", "cancelled", "cannot", "canonical", "capability", "case",
    "cased", "cases", "categories", "caught", "cause", "certificate",
    "certificates", "cgi", "chain", "chainmap", "chance", "change", "changed",
    "changes", "channel", "char", "character", "characters", "chars",
    "charset", "check", "checkers", "checks", "child", "children", "choose",
    "chosen", "chunk", "chunks", "circular", "circumstances", "class",
    "classes", "classification", "cleanup", "clear", "client", "clock",
    "close", "closed", "code", "codec", "codecs", "codes", "coffee",
    "collaboration", "collection", "collections", "color", "column", "columns",
    "com", "combinations", "combinatoric", "command", "commands",
    "commemoration", "comment", "comments", "common", "communication",
    "comparatively", "compare", "compared", "comparing", "comparison",
    "compatibility", "compatible", "compile", "compiled", "compiler",
    "complement", "complete", "completed", "completely", "completion",
    "complex", "component", "components", "compound", "comprehension",
    "comprehensive", "compress", "compressed", "compression", "compressor",
    "compute", "computed", "concatenate", "concatenation", "concrete",
    "condition", "conditions", "confidentiality", "configparser",
    "configuration", "configured", "congratulations", "connect", "connected",
    "connection", "connections", "consider", "considerable", "consideration",
    "considered", "consist", "consisting", "constant", "constants",
    "constellation", "constraints", "construct", "constructor", "constructs",
    "consume", "contain", "contained", "container", "containers", "containing",
    "contains", "content", "contents", "context", "contiguous", "continue",
    "continuous", "contradiction", "control", "controls", "controversial",
    "convenience", "convention", "conventionally", "conversion", "convert",
    "converted", "converting", "converts", "coordinate", "copied", "copies",
    "copy", "copying", "copyright", "coroutine", "coroutines", "correctly",
    "correspond", "correspondence", "corresponding", "corresponds", "could",
    "count", "counter", "counts", "course", "covariance", "covariant", "cpu",
    "create", "created", "creates", "creating", "creation", "critical",
    "crystallization", "cumulative", "cur", "curdir", "current", "currently",
    "curses", "cursor", "custom", "customize", "daemon", "data", "database",
    "dataclass", "datatype", "date", "datetime", "day", "days", "deals",
    "debug", "debugged", "debugger", "debugging", "decimal", "decode",
    "decoded", "decoder", "decoding", "decompress", "decompressor",
    "decorator", "deep", "def", "default", "defaulting", "defaults", "define",
    "defined", "defines", "defining", "definition", "defpath", "del",
    "delattr", "delay", "delete", "deleted", "delimiter", "delimiters",
    "delta", "demonstration", "denominator", "dependent", "depending",
    "depends", "deprecated", "depth", "deque", "derived", "descendants",
    "describe", "described", "describes", "describing", "description",
    "descriptor", "descriptors", "desired", "destination", "detached",
    "detailed", "details", "determination", "determine", "determined",
    "determines", "dev", "developmental", "deviation", "device", "devnull",
    "dialect", "dict", "dictionaries", "dictionary", "didn", "diff", "differ",
    "difference", "differences", "different", "differentiate", "digest",
    "digit", "digits", "dir", "directly", "directories", "directory",
    "disable", "disabled", "disappointment", "disconnect", "discrimination",
    "disk", "dispatch", "display", "displayhook", "disposition",
    "distinguishable", "distribution", "divmod", "dlopen", "do", "doc",
    "docstring", "docstrings", "doctest", "documentation", "does", "doesn",
    "domain", "don", "done", "dot", "dotall", "double", "down", "dramatically",
    "drive", "dump", "duplicates", "during", "dynamic", "each", "ear",
    "earlier", "early", "easier", "effect", "effective", "effectiveness",
    "efficient", "ehlo", "either", "electromagnetic", "elem", "element",
    "elements", "ellipsis", "else", "email", "embarrassment", "empty",
    "enable", "enabled", "enclosed", "encode", "encoded", "encoder",
    "encoding", "encodings", "encountered", "encouragement", "end", "endian",
    "ending", "endings", "endlessly", "endpoint", "ends", "enoent", "enough",
    "ensure", "enter", "entered", "entertainment", "entire", "entries",
    "entry", "enum", "enumeration", "envelope", "environment", "environmental",
    "eof", "epoch", "equal", "equality", "equivalent", "escape", "escapes",
    "esmtp", "especially", "establishment", "etc", "evaluates", "even",
    "event", "events", "eventually", "ever", "every", "everything", "exact",
    "exactly", "example", "examples", "exceptionally", "exec", "executable",
    "executables", "execute", "executed", "executes", "executing", "execution",
    "exhausted", "exist", "existing", "exists", "exit", "exits", "exp",
    "expanded", "expected", "experimentally", "experimentation", "explicit",
    "explicitly", "exponent", "exports", "expose", "expressed", "expression",
    "expressions", "extend", "extended", "extending", "extends", "extension",
    "extensions", "extra", "extract", "extracted", "extraordinarily",
    "extraordinary", "extsep", "factory", "fail", "failed", "failobj", "fails",
    "failure", "failures", "fallback", "false", "family", "far", "fast",
    "featherweight", "feature", "featureless", "fetch", "field", "fields",
    "file", "fileio", "filename", "filenames", "fileno", "files", "filesystem",
    "fill", "filter", "filters", "final", "finally", "find", "findall",
    "finders", "finditer", "first", "fit", "fix", "fixed", "flag", "flags",
    "float", "floating", "floats", "flush", "follow", "followed", "following",
    "follows", "for", "forbidden", "force", "fork", "form", "format",
    "formats", "formatted", "formatter", "formatting", "found", "four",
    "fraction", "fractions", "frame", "frames", "framework", "free", "from",
    "frozenset", "full", "fullmatch", "fullname", "fun", "func", "function",
    "functional", "functionality", "functions", "functools", "fundamentally",
    "further", "future", "futures", "gamma", "general", "generalization",
    "generally", "generate", "generated", "generates", "generating",
    "generation", "generator", "generators", "generic", "genericalias", "get",
    "getitem", "getlogger", "getmembers", "getprofile", "getrandbits",
    "getrefcount", "gets", "getsizeof", "getsockopt", "gettrace", "gid",
    "given", "gives", "giving", "global", "globals", "globs", "gnu", "go",
    "goes", "got", "grammar", "greater", "greedy", "group", "grouped",
    "grouping", "groups", "guaranteed", "guess", "gzip", "had", "half", "hand",
    "handle", "handled", "handler", "handlers", "handling", "handshake", "has",
    "hash", "hashable", "have", "having", "he", "header", "headers", "heap",
    "held", "helo", "help", "helper", "here", "hex", "hexadecimal",
    "hexversion", "hierarchy", "high", "higher", "hint", "hints", "history",
    "hit", "hold", "holds", "hook", "hospitalization", "host", "hostmask",
    "hostname", "hour", "hours", "how", "however", "human", "hyper",
    "hypertext", "i", "iana", "identical", "identifiable", "identification",
    "identified", "identifier", "identifying", "ids", "if", "iff", "ignore",
    "ignorecase", "ignored", "imap", "immediately", "immutable", "implement",
    "implementation", "implemented", "implementing", "implements", "import",
    "important", "imported", "importing", "importlib", "impossibility", "in",
    "include", "included", "includes", "including", "incomplete",
    "inconsistency", "inconvenience", "indent", "independently", "index",
    "indicate", "indicated", "indicates", "indicating", "individual", "inet",
    "inf", "infinite", "infinity", "info", "information", "infrastructure",
    "initial", "initialize", "initialized", "input", "inputs", "insensitive",
    "insert", "inserted", "inside", "install", "instance", "instances",
    "instantaneous", "instantiate", "instead", "institutional",
    "instrumentation", "int", "integer", "integers", "integral", "intended",
    "intensive", "interact", "interactive", "interface", "interfaces",
    "internal", "internally", "internationally", "interpret", "interpretation",
    "interpreted", "interpreter", "intersection", "interval", "into",
    "invalid", "invariant", "investigation", "invoke", "invoked", "iobase",
    "ipaddress", "ipv", "is", "isinstance", "islice", "isn", "iso",
    "issubclass", "it", "item", "items", "iter", "iterable", "iterables",
    "iterate", "iteration", "iterator", "iterators", "itn", "its", "itself",
    "jan", "job", "join", "joined", "jump", "junk", "just", "justification",
    "justified", "keeps", "key", "keyed", "keys", "keyword", "keywords",
    "kind", "knowledgeable", "known", "lacks", "lambd", "lambda", "language",
    "large", "larger", "largest", "last", "later", "latter", "leading",
    "least", "leave", "left", "legal", "length", "less", "letters", "level",
    "levels", "library", "like", "limit", "limits", "line", "linear", "lineno",
    "lines", "linesep", "link", "list", "lists", "literal", "little", "load",
    "loaded", "loader", "loading", "local", "locale", "locals", "localtime",
    "location", "locations", "lock", "locked", "log", "logarithm", "logged",
    "logger", "logging", "logical", "login", "logrecord", "long", "longest",
    "longmessage", "look", "looking", "lookup", "loop", "lost", "low", "lower",
    "lowercase", "lowest", "mac", "machine", "machinery", "made", "mail",
    "mailbox", "main", "maintained", "maintype", "make", "makes", "manager",
    "manipulate", "manipulation", "manual", "manufacturing", "many", "map",
    "mapped", "mapping", "mappings", "maps", "mark", "master", "match",
    "matched", "matches", "matching", "mathematically", "max", "maxheaderlen",
    "maximum", "maxsize", "maxunicode", "may", "me", "mean", "meaning",
    "means", "measured", "measurements", "mechanism", "median", "mem",
    "member", "members", "memory", "memoryview", "message", "messages", "meta",
    "metaclass", "metatype", "method", "methods", "microseconds", "mid",
    "might", "milliseconds", "mime", "min", "minus", "minutes",
    "miscellaneous", "missing", "mix", "mod", "mode", "model", "modes",
    "modification", "modified", "modify", "module", "modules", "modulespec",
    "monday", "monotonic", "month", "more", "most", "move", "mro", "much",
    "multi", "multicast", "multiline", "multipart", "multiple",
    "multiplication", "must", "mutable", "mutually", "my", "name", "named",
    "namedtuple", "names", "namespace", "namespaces", "nan", "native",
    "natural", "nbytes", "ndiff", "necessary", "need", "needed", "needn",
    "needs", "negative", "negotiation", "neighbourhood", "nested", "netmask",
    "network", "never", "new", "newline", "newlines", "next", "nicely",
    "nicer", "nil", "no", "node", "non", "none", "nor", "normal", "normaldist",
    "normalize", "normalized", "normally", "not", "notation", "note",
    "noteworthy", "nothing", "notice", "notwithstanding", "now", "ntpath",
    "null", "num", "number", "numbers", "numerator", "numeric", "obj",
    "object", "objects", "observed", "obsoletes", "obstacles", "obtain",
    "obtained", "occurred", "occurrence", "occurrences", "occurs", "of", "off",
    "offset", "old", "older", "omitted", "on", "once", "one", "ones", "only",
    "open", "opendir", "opened", "opener", "operand", "operands", "operating",
    "operation", "operations", "operator", "opt", "option", "optional",
    "optionally", "optionparser", "options", "or", "order", "ordering",
    "ordinals", "ordinary", "org", "organizational", "origin", "original",
    "originated", "other", "others", "otherwise", "our", "out", "outcome",
    "output", "outside", "over", "overlapping", "overridden", "override",
    "overrides", "overwhelmingly", "own", "owner", "owns", "package",
    "packages", "packed", "pad", "padded", "padding", "pair", "pairs",
    "parallelogram", "param", "parameter", "parameters", "pardir", "parent",
    "parentheses", "parents", "parse", "parser", "parsing", "part", "partial",
    "participation", "particular", "particularly", "parts", "pass", "passed",
    "passing", "password", "path", "pathname", "paths", "pathsep", "pattern",
    "patterns", "pause", "payload", "pem", "pep", "per", "perform",
    "performances", "performed", "perl", "permanent", "permutations",
    "perpendicular", "personalities", "pertaining", "pharmaceutical",
    "philosophical", "photographers", "phrases", "pickle", "pickled",
    "pickling", "pid", "pipe", "place", "places", "plain", "plast", "platform",
    "platforms", "plus", "point", "pointer", "pointing", "points", "policy",
    "pop", "popen", "population", "port", "portable", "pos", "position",
    "positional", "positive", "posix", "posixpath", "possibilities",
    "possible", "possibly", "pot", "pow", "practitioners", "pre", "preceded",
    "precedence", "preceding", "precision", "pred", "predominantly", "prefix",
    "prefixlen", "preliminarily", "presence", "present", "previous",
    "previously", "primarily", "print", "printable", "printed", "printing",
    "prints", "priority", "private", "probabilities", "probability", "problem",
    "process", "processed", "processes", "processing", "produced", "produces",
    "producing", "product", "professionally", "profiling", "program",
    "programs", "prompt", "pronunciation", "properly", "properties",
    "property", "proportionally", "proto", "protocol", "provide", "provided",
    "provides", "providing", "public", "purepath", "purge", "purposes", "put",
    "pyc", "python", "qualification", "qualitatively", "quantitatively",
    "questionnaire", "queue", "queued", "quiet", "quit", "quote", "quoted",
    "raise", "raised", "raises", "raising", "random", "range", "rather",
    "ratio", "rational", "raw", "rawiobase", "reached", "read", "readable",
    "reader", "reading", "readline", "reads", "ready", "real", "realistically",
    "reason", "reasonable", "receive", "received", "recent", "recipient",
    "recognized", "recommendation", "recommended", "reconciliation", "record",
    "records", "recursion", "recursive", "recursively", "recv", "red",
    "redirect", "reduce", "refer", "reference", "references", "reflected",
    "reflects", "regardless", "register", "registered", "registering",
    "registry", "regression", "regular", "rehabilitation", "related",
    "relationships", "relative", "release", "released", "relevant",
    "remaining", "remembers", "remote", "remove", "removed", "rename",
    "repeat", "repeatedly", "repetitions", "replace", "replaced",
    "replacement", "replacing", "reply", "report", "reported", "represent",
    "representative", "representing", "represents", "request", "required",
    "requires", "requote", "reserved", "reset", "resolution", "resource",
    "resources", "respective", "respectively", "response", "responses",
    "responsibility", "rest", "result", "resulting", "results", "resume",
    "retrieve", "retrieved", "return", "returncode", "returned", "returning",
    "returns", "reverse", "revolutionary", "right", "rightmost", "root",
    "round", "rounded", "rounding", "routines", "row", "rules", "run",
    "runner", "running", "runs", "runtime", "safe", "same", "sample", "save",
    "scheduled", "scheduling", "scope", "screen", "script", "search",
    "searched", "second", "seconds", "section", "see", "seek", "select",
    "selected", "selectors", "self", "semantics", "semaphore", "send", "sent",
    "sep", "separate", "separated", "separation", "separator", "separators",
    "seq", "sequence", "sequences", "serialize", "serialized", "server",
    "service", "session", "set", "setdefault", "setprofile", "sets",
    "setsockopt", "settimeout", "setting", "settings", "settrace", "setup",
    "several", "severity", "sha", "shallow", "shared", "shell", "short",
    "shorthand", "should", "show", "shutdown", "side", "sig", "sigma", "sign",
    "signal", "signaling", "signals", "signature", "signed", "significant",
    "significantly", "similar", "simple", "simplest", "simply",
    "simultaneously", "since", "single", "site", "six", "size", "sizeof",
    "skip", "slice", "smaller", "smallest", "so", "sock", "socket", "sockets",
    "some", "something", "sophistication", "sort", "sorted", "source",
    "sourceloader", "space", "spaces", "spawn", "spec", "special",
    "specialized", "specific", "specifically", "specifications", "specified",
    "specifies", "specify", "specifying", "split", "splitlines", "splits",
    "spontaneously", "square", "stack", "stand", "standard", "standardization",
    "start", "started", "starting", "starts", "stat", "state", "statement",
    "statements", "static", "statistics", "status", "step", "still", "stop",
    "stops", "store", "stored", "straightforward", "stream", "streamreader",
    "streams", "streamwriter", "strftime", "strict", "strictly", "string",
    "stringio", "strings", "strip", "strongly", "struct", "structures",
    "style", "sub", "subclass", "subclassed", "subclasses", "subclassing",
    "submodule", "submodules", "subn", "subnormal", "subparts", "subprocess",
    "subprocesses", "subsection", "subsequent", "subset", "substantially",
    "substitute", "substring", "substrings", "subtype", "successful",
    "successfully", "such", "suffix", "suitable", "sum", "super", "supplied",
    "support", "supported", "supporting", "supports", "surrounded", "symbol",
    "symbolic", "symbols", "symlink", "symlinks", "syntax", "system",
    "systemexit", "systems", "tab", "table", "tabs", "take", "taken", "takes",
    "tar", "tarfile", "target", "targetpath", "tarinfo", "task", "tasks",
    "teardown", "technological", "tee", "tell", "tells", "temporary",
    "terminal", "terminate", "terminated", "terminates", "terminator",
    "termios", "terms", "test", "testcase", "testclass", "tests", "text",
    "textiobase", "than", "that", "the", "their", "them", "themselves", "then",
    "there", "thermodynamics", "these", "they", "thing", "this", "those",
    "thread", "threading", "threads", "three", "through", "time", "timedelta",
    "timeout", "timer", "times", "timestamp", "to", "token", "too", "tools",
    "top", "total", "touch", "towards", "trace", "tracing", "traditionally",
    "trailing", "transfer", "transformation", "translate", "translated",
    "translation", "transparent", "transport", "transportation", "treated",
    "tree", "triangular", "tried", "tries", "triggered", "troubleshooting",
    "true", "truncate", "truncated", "truncates", "truncating", "try", "tty",
    "tuple", "tuples", "turn", "two", "typ", "type", "typed", "typeddict",
    "types", "typevar", "typically", "typing", "tzinfo", "uid", "unaffected",
    "unavailable", "uncaught", "unchanged", "uncompressed", "unconditionally",
    "under", "underlying", "underscore", "understandable", "unequal",
    "unexpected", "unfinished", "unfortunately", "unicode", "union", "unique",
    "universal", "unix", "unknown", "unless", "unlike", "unlink", "unlocked",
    "unordered", "unpack", "unpickling", "unprecedented", "unquoted",
    "unregister", "unrelated", "unsigned", "unspecified", "until",
    "untranslated", "unusable", "up", "update", "upon", "upper", "uppercase",
    "urn", "us", "usable", "usage", "use", "used", "useful", "user", "uses",
    "using", "usual", "usually", "utc", "utilities", "uuid", "val", "valid",
    "value", "values", "variable", "variables", "variant", "various", "vars",
    "verbose", "version", "versions", "very", "via", "view", "virtual",
    "vulnerability", "wait", "waiting", "waits", "walk", "want", "was",
    "watcher", "water", "way", "we", "weak", "webdav", "week", "weekday",
    "weeks", "well", "were", "what", "wheel", "when", "whence", "whenever",
    "where", "whether", "which", "while", "whitespace", "who", "whole",
    "whose", "width", "will", "window", "windows", "with", "within", "without",
    "won", "word", "words", "work", "working", "works", "would", "wrap",
    "wrapped", "wrapper", "wraps", "writable", "write", "writer", "writes",
    "writing", "written", "xef", "year", "yes", "yet", "yield", "yielding",
    "yields", "you", "your", "zero", "zeros", "zip", "zipinfo", "zone",
];
