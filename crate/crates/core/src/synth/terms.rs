//! Checked-in accounting vocabulary for synthetic charts of accounts.

pub const HEADS: &[&str] = &[
    "assets",
    "liabilities",
    "equity",
    "revenue",
    "expenses",
    "land",
    "buildings",
    "vehicles",
    "machinery",
    "equipment",
    "furniture",
    "fixtures",
    "computers",
    "software",
    "goodwill",
    "patents",
    "trademarks",
    "investments",
    "inventory",
    "stock",
    "debtors",
    "receivables",
    "prepayments",
    "cash",
    "bank",
    "deposits",
    "creditors",
    "payables",
    "accruals",
    "loans",
    "overdraft",
    "mortgage",
    "leases",
    "provisions",
    "dividends",
    "reserves",
    "capital",
    "shares",
    "sales",
    "turnover",
    "commissions",
    "royalties",
    "grants",
    "interest",
    "rent",
    "rates",
    "insurance",
    "utilities",
    "electricity",
    "gas",
    "water",
    "telephone",
    "postage",
    "stationery",
    "printing",
    "advertising",
    "marketing",
    "travel",
    "subsistence",
    "entertainment",
    "wages",
    "salaries",
    "pensions",
    "bonuses",
    "training",
    "recruitment",
    "consultancy",
    "legal fees",
    "audit fees",
    "accountancy",
    "bank charges",
    "depreciation",
    "amortisation",
    "repairs",
    "maintenance",
    "cleaning",
    "security",
    "licences",
    "subscriptions",
    "donations",
    "fuel",
    "freight",
    "carriage",
    "packaging",
    "materials",
    "supplies",
    "tools",
    "uniforms",
    "hire",
    "taxation",
    "vat",
    "payroll",
    "bad debts",
    "discounts",
    "refunds",
    "rebates",
    "tips",
    "hardware",
    "website",
    "hosting",
    "research",
    "development",
    "samples",
    "warranties",
    "storage",
    "motor expenses",
    "parking",
    "tolls",
    "canteen",
    "gifts",
    "medical",
    "childcare",
    "mileage",
    "staff costs",
    "directors remuneration",
    "social security",
    "customs duty",
    "excise",
    "penalties",
    "fines",
    "exchange differences",
    "hedging",
    "derivatives",
];

pub const MODIFIERS: &[&str] = &[
    "fixed",
    "current",
    "tangible",
    "intangible",
    "accrued",
    "deferred",
    "prepaid",
    "short term",
    "long term",
    "trade",
    "other",
    "sundry",
    "general",
    "administrative",
    "operating",
    "non operating",
    "domestic",
    "foreign",
    "staff",
    "directors",
    "office",
    "factory",
    "retail",
    "wholesale",
    "capital",
    "revenue",
    "leasehold",
    "freehold",
    "secured",
    "unsecured",
    "corporate",
    "employee",
    "customer",
    "supplier",
    "group",
    "associate",
    "contract",
    "temporary",
    "annual",
    "monthly",
];

/// Word-level synonyms; applied in both directions.
pub const SYNONYMS: &[(&str, &str)] = &[
    ("vehicles", "motor cars"),
    ("payables", "creditors"),
    ("receivables", "debtors"),
    ("inventory", "stock"),
    ("sales", "turnover"),
    ("revenue", "income"),
    ("expenses", "costs"),
    ("wages", "pay"),
    ("salaries", "remuneration"),
    ("equipment", "plant"),
    ("machinery", "plant and machinery"),
    ("buildings", "premises"),
    ("land", "property"),
    ("furniture", "furnishings"),
    ("computers", "it equipment"),
    ("software", "applications"),
    ("patents", "intellectual property"),
    ("cash", "petty cash"),
    ("bank", "current account"),
    ("loans", "borrowings"),
    ("overdraft", "bank overdraft"),
    ("mortgage", "secured loan"),
    ("leases", "hire purchase"),
    ("provisions", "allowances"),
    ("dividends", "distributions"),
    ("reserves", "retained earnings"),
    ("capital", "share capital"),
    ("commissions", "agent fees"),
    ("grants", "subsidies"),
    ("interest", "finance charges"),
    ("rent", "lease rental"),
    ("rates", "business rates"),
    ("insurance", "cover"),
    ("utilities", "services"),
    ("electricity", "power"),
    ("gas", "heating"),
    ("telephone", "phone"),
    ("postage", "courier"),
    ("stationery", "office supplies"),
    ("advertising", "promotion"),
    ("marketing", "publicity"),
    ("travel", "travelling"),
    ("subsistence", "meals"),
    ("entertainment", "hospitality"),
    ("pensions", "retirement benefits"),
    ("bonuses", "incentives"),
    ("training", "staff development"),
    ("recruitment", "hiring"),
    ("consultancy", "professional fees"),
    ("legal", "solicitors"),
    ("audit", "assurance"),
    ("accountancy", "bookkeeping"),
    ("depreciation", "write down"),
    ("amortisation", "amortization"),
    ("repairs", "renewals"),
    ("maintenance", "upkeep"),
    ("cleaning", "janitorial"),
    ("security", "guarding"),
    ("licences", "licenses"),
    ("subscriptions", "memberships"),
    ("donations", "charitable giving"),
    ("fuel", "petrol"),
    ("freight", "shipping"),
    ("carriage", "delivery"),
    ("packaging", "packing"),
    ("materials", "raw materials"),
    ("supplies", "consumables"),
    ("tools", "small tools"),
    ("uniforms", "workwear"),
    ("hire", "rental"),
    ("taxation", "tax"),
    ("payroll", "wages bureau"),
    ("discounts", "reductions"),
    ("refunds", "repayments"),
    ("rebates", "allowances received"),
    ("hardware", "devices"),
    ("website", "web"),
    ("hosting", "servers"),
    ("research", "investigation"),
    ("warranties", "guarantees"),
    ("storage", "warehousing"),
    ("parking", "car park"),
    ("canteen", "catering"),
    ("gifts", "presents"),
    ("medical", "healthcare"),
    ("mileage", "car allowance"),
    ("penalties", "surcharges"),
    ("fines", "penalty charges"),
    ("fixed", "non current"),
    ("current", "short"),
    ("accrued", "outstanding"),
    ("deferred", "unearned"),
    ("prepaid", "paid in advance"),
    ("sundry", "miscellaneous"),
    ("general", "overhead"),
    ("administrative", "admin"),
    ("office", "head office"),
    ("staff", "personnel"),
    ("directors", "board"),
    ("trade", "commercial"),
    ("employee", "worker"),
];

/// Common ledger abbreviations; words not listed are clipped.
pub const ABBREVIATIONS: &[(&str, &str)] = &[
    ("accrued", "accr"),
    ("accruals", "accrls"),
    ("administrative", "admin"),
    ("advertising", "advert"),
    ("amortisation", "amort"),
    ("accountancy", "acctcy"),
    ("buildings", "bldgs"),
    ("capital", "cap"),
    ("commissions", "comms"),
    ("computers", "comp"),
    ("consultancy", "consult"),
    ("creditors", "crs"),
    ("current", "curr"),
    ("debtors", "drs"),
    ("depreciation", "depn"),
    ("development", "dev"),
    ("directors", "dirs"),
    ("dividends", "divs"),
    ("electricity", "elec"),
    ("entertainment", "ent"),
    ("equipment", "equip"),
    ("expenses", "exps"),
    ("furniture", "furn"),
    ("general", "gen"),
    ("insurance", "ins"),
    ("interest", "int"),
    ("investments", "invs"),
    ("liabilities", "liabs"),
    ("machinery", "mach"),
    ("maintenance", "maint"),
    ("marketing", "mktg"),
    ("materials", "mats"),
    ("payables", "pay"),
    ("prepayments", "prepay"),
    ("professional", "prof"),
    ("provisions", "provs"),
    ("receivables", "recv"),
    ("recruitment", "recruit"),
    ("repairs", "reprs"),
    ("salaries", "sals"),
    ("stationery", "stat"),
    ("subscriptions", "subs"),
    ("telephone", "tel"),
    ("vehicles", "vehs"),
];
