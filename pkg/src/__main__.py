from src import main

main()
