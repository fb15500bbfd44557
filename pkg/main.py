from quatforms.classes import LevelSpec, class_set
from quatforms.config import set_config
from quatforms.default_config import DEFAULT_CONFIG
from quatforms.hecke import FormSpace, HeckeDescriptor
from quatforms.padic import PrecCtx
from quatforms.spectral import charpoly_int, slope_spectrum
from quatforms.storage import open_cache
import dotenv

# Load environment variables from a .env file
dotenv.load_dotenv()

# Create a custom config
config = DEFAULT_CONFIG.copy()
config["max_workers"] = 2
config["cache_dir"] = "./cache"
set_config(config)

# Level U1(7) with no structure at 2: two classes
cs = class_set(LevelSpec(p=7), PrecCtx(7, 10), cache=open_cache(config["cache_dir"]))

# T3 on weight 5 forms, lifted to Z
lifted = charpoly_int(HeckeDescriptor.parse("T3"), FormSpace(cs, 5))
print(lifted)

# U7 slopes on weight 1 overconvergent forms
spectrum = slope_spectrum(FormSpace(cs, 1, "overconvergent"), M=10, N=12, stable_prefix=4)
print([str(s) for s in spectrum.lowest(6)], "stable" if spectrum.stable else "unstable")
