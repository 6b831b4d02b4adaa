import os
from dotenv import load_dotenv

load_dotenv()

ENDO_BUDGET = int(os.getenv("MORPHIC_ENDO_BUDGET", str(2 ** 20)))
PRODUCT_BUDGET = int(os.getenv("MORPHIC_PRODUCT_BUDGET", "10000"))
LOG_LEVEL = os.getenv("MORPHIC_LOG_LEVEL", "WARNING")
LOG_FILE = os.getenv("MORPHIC_LOG_FILE", "")
